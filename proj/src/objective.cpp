/* Copyright (c) 2026, vizobj contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 the "License";
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "objective.hpp"

#include <cmath>

#include "error.hpp"

namespace vizobj {

const char* to_string(Objective objective) {
    switch (objective) {
        case Objective::T1S: return "t1s";
        case Objective::T1: return "t1";
        case Objective::T2: return "t2";
        case Objective::T3: return "t3";
        case Objective::T4: return "t4";
        case Objective::T5: return "t5";
        case Objective::T6: return "t6";
        case Objective::T7: return "t7";
        case Objective::T8: return "t8";
        case Objective::T9: return "t9";
    }
    return "?";
}

Objective parse_objective(const std::string& text) {
    std::string t;
    for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (Objective o : kAllObjectives)
        if (t == to_string(o)) return o;
    if (t == "t1-static" || t == "static") return Objective::T1S;
    fail(ErrorCode::Config, "unknown objective '" + text + "' (expected t1s or t1..t9)");
}

bool is_temporal(Objective objective) { return objective != Objective::T1S; }

bool is_diffused(Objective objective) { return objective != Objective::T1S && objective != Objective::T1; }

PairTerms pair_terms(Objective objective, const TrainingPair& pair, const ScoringContext& ctx) {
    const double delta = pair.delta;
    if (objective == Objective::T1S || objective == Objective::T1 || objective == Objective::T2)
        return {1.0, delta};
    if (ctx.frequencies == nullptr) fail(ErrorCode::Config, std::string("objective ") + to_string(objective) +
                                                               " needs a frequency table");
    const double nr = (*ctx.frequencies)(pair.ref, pair.t_ref);
    const double nc = (*ctx.frequencies)(pair.ctx, pair.t_ref);
    switch (objective) {
        case Objective::T3: return {nr + nc, delta};
        case Objective::T4: return {1.0, (2.0 - (nr + nc)) * delta};
        case Objective::T5: return {1.0, (1.0 - phi_avg(nr, nc)) * delta};
        case Objective::T6: return {1.0, (1.0 - phi_min(nr, nc)) * delta};
        case Objective::T7: return {1.0, (1.0 - phi_min(nr, nc) / 2.0) * delta};
        case Objective::T8: {
            const double m = phi_min(nr, nc);
            if (!(m > 0.0)) fail(ErrorCode::Domain, "t8 needs a positive minimum frequency");
            return {1.0, 2.0 * std::log(1.5 / m) * delta};
        }
        case Objective::T9: return {1.0, omega_ln(phi_avg(nr, nc)) * delta};
        default: break;
    }
    return {1.0, delta};
}

double residual_loss(const PairTerms& terms, std::span<const double> u, std::span<const double> v,
                     std::span<double> grad_u, std::span<double> grad_v) {
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0) fail(ErrorCode::Degenerate, "cosine of a zero vector is undefined");
    const double uv = dot(u, v);
    const double cos = uv / (nu * nv);
    const double residual = terms.scale * (1.0 - cos) - terms.target;
    if (!grad_u.empty() || !grad_v.empty()) {
        // d(1 - cos)/du = -(v/(|u||v|) - cos u/|u|^2), symmetrically for v.
        const double g = 2.0 * residual * terms.scale;
        const double inv = 1.0 / (nu * nv);
        const double cu = cos / (nu * nu);
        const double cv = cos / (nv * nv);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (!grad_u.empty()) grad_u[i] = -g * (v[i] * inv - cu * u[i]);
            if (!grad_v.empty()) grad_v[i] = -g * (u[i] * inv - cv * v[i]);
        }
    }
    return residual * residual;
}

void check_compatible(Objective objective, const TrainingPair& pair, const Embedding& emb) {
    if (is_temporal(objective)) {
        if (!emb.temporal()) fail(ErrorCode::Config, std::string("objective ") + to_string(objective) +
                                                          " needs a temporal embedding");
        if (!pair.temporal()) fail(ErrorCode::Config, std::string("objective ") + to_string(objective) +
                                                           " needs temporal pairs (t_ref present)");
        if (pair.t_ref >= emb.n_timestamps()) fail(ErrorCode::Index, "pair timestamp outside the embedding");
    } else {
        if (emb.temporal()) fail(ErrorCode::Config, "objective t1s needs a static embedding");
        if (pair.temporal()) fail(ErrorCode::Config, "objective t1s needs static pairs (t_ref = -1)");
    }
    if (pair.ref < 0 || pair.ref >= emb.n_objects() || pair.ctx < 0 || pair.ctx >= emb.n_objects())
        fail(ErrorCode::Index, "pair label outside the embedding");
}

namespace {

std::vector<double> effective_vector(Objective objective, const Embedding& emb, LabelId label, int t_ref,
                                     const ScoringContext& ctx) {
    if (is_diffused(objective)) return diffused_vector(emb, label, t_ref, ctx.kernel);
    const auto v = emb.vec(label, objective == Objective::T1S ? 0 : t_ref);
    return {v.begin(), v.end()};
}

}  // namespace

double pair_loss(Objective objective, const TrainingPair& pair, const Embedding& emb, const ScoringContext& ctx) {
    check_compatible(objective, pair, emb);
    const auto u = effective_vector(objective, emb, pair.ref, pair.t_ref, ctx);
    const auto v = effective_vector(objective, emb, pair.ctx, pair.t_ref, ctx);
    return residual_loss(pair_terms(objective, pair, ctx), u, v);
}

double total_loss(Objective objective, const std::vector<TrainingPair>& pairs, const Embedding& emb,
                  const ScoringContext& ctx) {
    double sum = 0.0;
    for (const auto& p : pairs) sum += pair_loss(objective, p, emb, ctx);
    return sum;
}

std::vector<GradientEntry> pair_gradient(Objective objective, const TrainingPair& pair, const Embedding& emb,
                                         const ScoringContext& ctx) {
    check_compatible(objective, pair, emb);
    const auto u = effective_vector(objective, emb, pair.ref, pair.t_ref, ctx);
    const auto v = effective_vector(objective, emb, pair.ctx, pair.t_ref, ctx);
    const std::size_t dim = u.size();
    std::vector<double> gu(dim), gv(dim);
    residual_loss(pair_terms(objective, pair, ctx), u, v, gu, gv);

    std::vector<GradientEntry> out;
    auto add = [&](LabelId label, int t, const std::vector<double>& g, double w) {
        for (auto& e : out) {
            if (e.label == label && e.t == t) {
                for (std::size_t i = 0; i < dim; ++i) e.values[i] += w * g[i];
                return;
            }
        }
        GradientEntry e{label, t, std::vector<double>(dim)};
        for (std::size_t i = 0; i < dim; ++i) e.values[i] = w * g[i];
        out.push_back(std::move(e));
    };
    if (is_diffused(objective)) {
        for (int t = 0; t < emb.n_timestamps(); ++t) {
            const double w = ctx.kernel.weight(pair.t_ref, t);
            add(pair.ref, t, gu, w);
            add(pair.ctx, t, gv, w);
        }
    } else {
        const int t = objective == Objective::T1S ? 0 : pair.t_ref;
        add(pair.ref, t, gu, 1.0);
        add(pair.ctx, t, gv, 1.0);
    }
    return out;
}

}  // namespace vizobj
