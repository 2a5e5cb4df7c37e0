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

#include "trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "error.hpp"

namespace vizobj {

const char* to_string(Optimizer optimizer) {
    return optimizer == Optimizer::Adam ? "adam" : "sgd";
}

Optimizer parse_optimizer(const std::string& text) {
    if (text == "sgd") return Optimizer::Sgd;
    if (text == "adam") return Optimizer::Adam;
    fail(ErrorCode::Config, "unknown optimizer '" + text + "' (expected sgd or adam)");
}

void TrainConfig::validate() const {
    if (dim < 1) fail(ErrorCode::Config, "dim must be positive");
    if (!(learning_rate > 0.0)) fail(ErrorCode::Config, "learning_rate must be positive");
    if (epochs < 0) fail(ErrorCode::Config, "epochs must be nonnegative");
    if (batch_size < 1) fail(ErrorCode::Config, "batch_size must be at least 1");
    if (!(sigma_t > 0.0)) fail(ErrorCode::Config, "sigma_t must be positive");
    if (!(epsilon > 0.0)) fail(ErrorCode::Config, "epsilon must be positive");
    if (threads < 1) fail(ErrorCode::Config, "threads must be at least 1");
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0))
        fail(ErrorCode::Config, "adam betas must lie in [0,1)");
}

namespace {

bool needs_frequencies(Objective o) {
    return o != Objective::T1S && o != Objective::T1 && o != Objective::T2;
}

/// Effective vectors (raw slices or diffused sums) for a set of (label, t) keys,
/// recomputed lazily from the current parameters.
class EffectiveCache {
public:
    EffectiveCache(Objective objective, const Embedding& emb, const std::vector<double>& kernel)
        : objective_(objective), emb_(emb), kernel_(kernel), n_ts_(emb.n_timestamps()),
          dim_(static_cast<std::size_t>(emb.dim())),
          values_(is_diffused(objective) ? emb.data().size() : 0),
          stamp_(static_cast<std::size_t>(emb.n_objects() * emb.n_timestamps()), 0) {}

    void invalidate() { ++generation_; }

    std::span<const double> get(LabelId label, int t) {
        if (!is_diffused(objective_)) return emb_.vec(label, t);
        const std::size_t key = static_cast<std::size_t>(label) * static_cast<std::size_t>(n_ts_) + static_cast<std::size_t>(t);
        double* out = values_.data() + key * dim_;
        if (stamp_[key] != generation_) {
            std::fill(out, out + dim_, 0.0);
            const double* w = kernel_.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(n_ts_);
            for (int s = 0; s < n_ts_; ++s) {
                const auto src = emb_.vec(label, s);
                const double ws = w[s];
                for (std::size_t i = 0; i < dim_; ++i) out[i] += ws * src[i];
            }
            stamp_[key] = generation_;
        }
        return {out, dim_};
    }

private:
    Objective objective_;
    const Embedding& emb_;
    const std::vector<double>& kernel_;
    int n_ts_;
    std::size_t dim_;
    std::vector<double> values_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t generation_ = 1;
};

/// Gradient accumulator over effective-vector keys.
struct Workspace {
    std::vector<double> grad;
    std::vector<char> marked;
    std::vector<std::size_t> touched;
    std::vector<double> gu, gv;
    double loss = 0.0;

    Workspace(std::size_t n_keys, std::size_t dim)
        : grad(n_keys * dim, 0.0), marked(n_keys, 0), gu(dim), gv(dim) {}

    void add(std::size_t key, std::span<const double> g, std::size_t dim) {
        if (!marked[key]) {
            marked[key] = 1;
            touched.push_back(key);
        }
        double* dst = grad.data() + key * dim;
        for (std::size_t i = 0; i < dim; ++i) dst[i] += g[i];
    }

    void clear(std::size_t dim) {
        for (std::size_t key : touched) {
            marked[key] = 0;
            std::fill(grad.begin() + static_cast<std::ptrdiff_t>(key * dim),
                      grad.begin() + static_cast<std::ptrdiff_t>((key + 1) * dim), 0.0);
        }
        touched.clear();
        loss = 0.0;
    }
};

int slice_of(Objective objective, const TrainingPair& p) {
    return objective == Objective::T1S ? 0 : p.t_ref;
}

}  // namespace

double mean_loss(Objective objective, const std::vector<TrainingPair>& pairs, const Embedding& emb,
                 const ScoringContext& ctx) {
    if (pairs.empty()) return 0.0;
    std::vector<double> kernel(static_cast<std::size_t>(emb.n_timestamps() * emb.n_timestamps()));
    for (int r = 0; r < emb.n_timestamps(); ++r)
        for (int t = 0; t < emb.n_timestamps(); ++t)
            kernel[static_cast<std::size_t>(r * emb.n_timestamps() + t)] = ctx.kernel.weight(r, t);
    EffectiveCache cache(objective, emb, kernel);
    double sum = 0.0;
    for (const auto& p : pairs) {
        const int t = slice_of(objective, p);
        sum += residual_loss(pair_terms(objective, p, ctx), cache.get(p.ref, t), cache.get(p.ctx, t));
    }
    return sum / static_cast<double>(pairs.size());
}

TrainResult train(const std::vector<TrainingPair>& pairs, const TrainConfig& config, const Corpus& corpus) {
    config.validate();
    if (pairs.empty()) fail(ErrorCode::InvalidArgument, "training needs at least one pair");
    const Objective objective = config.objective;
    const int n_ts = is_temporal(objective) ? corpus.n_timestamps() : 1;
    if (is_temporal(objective) && n_ts < 2)
        fail(ErrorCode::Config, std::string("temporal objective ") + to_string(objective) + " needs at least 2 timestamps");

    Embedding emb = Embedding::uniform(is_temporal(objective) ? EmbeddingKind::Temporal : EmbeddingKind::Static,
                                       corpus.labels(), n_ts, config.dim, config.seed);
    for (const auto& p : pairs) check_compatible(objective, p, emb);

    FrequencyTable freq;
    if (needs_frequencies(objective)) {
        FrequencyNormalizer normalizer{config.sigma_f > 0.0 ? config.sigma_f : default_sigma_f(corpus), config.epsilon};
        freq = FrequencyTable(normalizer, corpus);
    }
    ScoringContext ctx{DiffusionKernel{config.sigma_t, n_ts}, needs_frequencies(objective) ? &freq : nullptr};
    ctx.kernel.validate();

    std::vector<PairTerms> terms(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) terms[i] = pair_terms(objective, pairs[i], ctx);

    std::vector<double> kernel(static_cast<std::size_t>(n_ts * n_ts));
    for (int r = 0; r < n_ts; ++r)
        for (int t = 0; t < n_ts; ++t) kernel[static_cast<std::size_t>(r * n_ts + t)] = ctx.kernel.weight(r, t);

    const std::size_t dim = static_cast<std::size_t>(config.dim);
    const std::size_t n_keys = static_cast<std::size_t>(emb.n_objects()) * static_cast<std::size_t>(n_ts);
    const bool diffused = is_diffused(objective);
    EffectiveCache cache(objective, emb, kernel);

    const int n_workers = std::max(1, std::min(config.threads, config.batch_size));
    std::vector<Workspace> workers;
    for (int w = 0; w < n_workers; ++w) workers.emplace_back(n_keys, dim);

    // Parameter-space gradient (diffused objectives scatter effective gradients to every slice).
    std::vector<double> param_grad(diffused ? n_keys * dim : 0, 0.0);
    std::vector<char> param_marked(diffused ? n_keys : 0, 0);
    std::vector<std::size_t> param_touched;

    std::vector<double> adam_m, adam_v;
    std::vector<std::int64_t> adam_steps;
    if (config.optimizer == Optimizer::Adam) {
        adam_m.assign(n_keys * dim, 0.0);
        adam_v.assign(n_keys * dim, 0.0);
        adam_steps.assign(n_keys, 0);
    }

    auto apply = [&](std::size_t key, const double* g) {
        auto row = emb.data().subspan(key * dim, dim);
        if (config.optimizer == Optimizer::Sgd) {
            for (std::size_t i = 0; i < dim; ++i) row[i] -= config.learning_rate * g[i];
            return;
        }
        // Lazy Adam: moments and bias correction advance only for rows with a gradient.
        const auto step = ++adam_steps[key];
        const double c1 = 1.0 - std::pow(config.adam_beta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(config.adam_beta2, static_cast<double>(step));
        double* m = adam_m.data() + key * dim;
        double* v = adam_v.data() + key * dim;
        for (std::size_t i = 0; i < dim; ++i) {
            m[i] = config.adam_beta1 * m[i] + (1.0 - config.adam_beta1) * g[i];
            v[i] = config.adam_beta2 * v[i] + (1.0 - config.adam_beta2) * g[i] * g[i];
            row[i] -= config.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + config.adam_epsilon);
        }
    };

    auto accumulate = [&](Workspace& ws, const std::size_t* idx, std::size_t count, double scale) {
        for (std::size_t j = 0; j < count; ++j) {
            const auto& p = pairs[idx[j]];
            const int t = slice_of(objective, p);
            const auto u = cache.get(p.ref, t);
            const auto v = cache.get(p.ctx, t);
            ws.loss += residual_loss(terms[idx[j]], u, v, ws.gu, ws.gv);
            for (auto& g : ws.gu) g *= scale;
            for (auto& g : ws.gv) g *= scale;
            ws.add(static_cast<std::size_t>(p.ref) * static_cast<std::size_t>(n_ts) + static_cast<std::size_t>(t), ws.gu, dim);
            ws.add(static_cast<std::size_t>(p.ctx) * static_cast<std::size_t>(n_ts) + static_cast<std::size_t>(t), ws.gv, dim);
        }
    };

    TrainResult result;
    auto record_loss = [&](int epoch) {
        double l = 0.0;
        try {
            l = mean_loss(objective, pairs, emb, ctx);
        } catch (const Error& e) {
            fail(ErrorCode::Training, "training failed at epoch " + std::to_string(epoch) + ": " + e.what());
        }
        if (!std::isfinite(l))
            fail(ErrorCode::Training, "training diverged at epoch " + std::to_string(epoch) + " (non-finite loss)");
        result.loss_trace.push_back(l);
    };
    record_loss(0);

    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 shuffle_rng(config.seed ^ 0x5DEECE66DULL);
    const std::size_t batch = static_cast<std::size_t>(config.batch_size);

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        try {
            for (std::size_t start = 0; start < order.size(); start += batch) {
                const std::size_t count = std::min(batch, order.size() - start);
                const double scale = 1.0 / static_cast<double>(count);
                cache.invalidate();
                if (n_workers == 1) {
                    accumulate(workers[0], order.data() + start, count, scale);
                } else {
                    // Fill the cache up front so workers only read it.
                    for (std::size_t j = 0; j < count; ++j) {
                        const auto& p = pairs[order[start + j]];
                        cache.get(p.ref, slice_of(objective, p));
                        cache.get(p.ctx, slice_of(objective, p));
                    }
                    std::vector<std::thread> threads;
                    const std::size_t chunk = (count + static_cast<std::size_t>(n_workers) - 1) / static_cast<std::size_t>(n_workers);
                    for (int w = 0; w < n_workers; ++w) {
                        const std::size_t lo = std::min(count, static_cast<std::size_t>(w) * chunk);
                        const std::size_t hi = std::min(count, lo + chunk);
                        threads.emplace_back([&, w, lo, hi] {
                            accumulate(workers[static_cast<std::size_t>(w)], order.data() + start + lo, hi - lo, scale);
                        });
                    }
                    for (auto& th : threads) th.join();
                    // Fixed-order reduction into worker 0.
                    for (int w = 1; w < n_workers; ++w) {
                        auto& src = workers[static_cast<std::size_t>(w)];
                        for (std::size_t key : src.touched)
                            workers[0].add(key, std::span<const double>(src.grad.data() + key * dim, dim), dim);
                        src.clear(dim);
                    }
                }

                Workspace& ws = workers[0];
                if (!diffused) {
                    for (std::size_t key : ws.touched) apply(key, ws.grad.data() + key * dim);
                } else {
                    for (std::size_t key : ws.touched) {
                        const std::size_t label = key / static_cast<std::size_t>(n_ts);
                        const int t_r = static_cast<int>(key % static_cast<std::size_t>(n_ts));
                        const double* g = ws.grad.data() + key * dim;
                        const double* w = kernel.data() + static_cast<std::size_t>(t_r * n_ts);
                        for (int s = 0; s < n_ts; ++s) {
                            const std::size_t pkey = label * static_cast<std::size_t>(n_ts) + static_cast<std::size_t>(s);
                            if (!param_marked[pkey]) {
                                param_marked[pkey] = 1;
                                param_touched.push_back(pkey);
                            }
                            double* dst = param_grad.data() + pkey * dim;
                            for (std::size_t i = 0; i < dim; ++i) dst[i] += w[s] * g[i];
                        }
                    }
                    for (std::size_t pkey : param_touched) {
                        apply(pkey, param_grad.data() + pkey * dim);
                        std::fill(param_grad.begin() + static_cast<std::ptrdiff_t>(pkey * dim),
                                  param_grad.begin() + static_cast<std::ptrdiff_t>((pkey + 1) * dim), 0.0);
                        param_marked[pkey] = 0;
                    }
                    param_touched.clear();
                }
                ws.clear(dim);
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Training) throw;
            fail(ErrorCode::Training, "training failed at epoch " + std::to_string(epoch) + ": " + e.what());
        }
        record_loss(epoch);
    }

    result.embedding = std::move(emb);
    return result;
}

}  // namespace vizobj
