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

#include "eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "error.hpp"
#include "log.hpp"

namespace vizobj {

namespace {

int resolve_slice(const Embedding& emb, std::optional<int> t) {
    if (!emb.temporal()) {
        if (t && *t != 0) fail(ErrorCode::InvalidArgument, "static embeddings have no timestamp " + std::to_string(*t));
        return 0;
    }
    if (!t) fail(ErrorCode::InvalidArgument, "a timestamp is required for temporal embeddings");
    if (*t < 0 || *t >= emb.n_timestamps())
        fail(ErrorCode::Index, "timestamp " + std::to_string(*t) + " out of range [0, " +
                                   std::to_string(emb.n_timestamps()) + ")");
    return *t;
}

void check_label(const Embedding& emb, LabelId label) {
    if (label < 0 || label >= emb.n_objects())
        fail(ErrorCode::Index, "label id " + std::to_string(label) + " out of range [0, " +
                                   std::to_string(emb.n_objects()) + ")");
}

bool by_value_desc(const Neighbor& x, const Neighbor& y) {
    if (x.value != y.value) return x.value > y.value;
    return x.label < y.label;
}

/// Row-normalized copy of one slice: |O| x dim.
std::vector<double> unit_rows(const Embedding& emb, int t) {
    const std::size_t dim = static_cast<std::size_t>(emb.dim());
    std::vector<double> out(static_cast<std::size_t>(emb.n_objects()) * dim);
    for (LabelId i = 0; i < emb.n_objects(); ++i) {
        const auto v = emb.vec(i, t);
        const double n = norm(v);
        if (n == 0.0) fail(ErrorCode::Degenerate, "zero vector for label \"" + emb.labels()[static_cast<std::size_t>(i)] + "\"");
        for (std::size_t d = 0; d < dim; ++d) out[static_cast<std::size_t>(i) * dim + d] = v[d] / n;
    }
    return out;
}

double row_dot(const std::vector<double>& rows, std::size_t dim, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) s += rows[i * dim + d] * rows[j * dim + d];
    return s;
}

double cos_dist(double similarity) { return std::clamp(1.0 - similarity, 0.0, 2.0); }

}  // namespace

NeighborList nearest_neighbors(const Embedding& emb, LabelId query, std::optional<int> t, int k) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    check_label(emb, query);
    const int slice = resolve_slice(emb, t);
    NeighborList out{query, emb.temporal() ? slice : -1, {}};
    const auto q = emb.vec(query, slice);
    for (LabelId c = 0; c < emb.n_objects(); ++c) {
        if (c == query) continue;
        out.neighbors.push_back({c, cosine_similarity(q, emb.vec(c, slice))});
    }
    const std::size_t keep = std::min(out.neighbors.size(), static_cast<std::size_t>(k));
    std::partial_sort(out.neighbors.begin(), out.neighbors.begin() + static_cast<std::ptrdiff_t>(keep),
                      out.neighbors.end(), by_value_desc);
    out.neighbors.resize(keep);
    return out;
}

NeighborList base_neighbors(const Corpus& corpus, LabelId query, int t, int k) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    if (query < 0 || query >= corpus.n_labels()) fail(ErrorCode::Index, "label id " + std::to_string(query) + " out of range");
    if (t < 0 || t >= corpus.n_timestamps()) fail(ErrorCode::Index, "timestamp " + std::to_string(t) + " out of range");
    if (!corpus.present(query, t))
        fail(ErrorCode::Domain, "label \"" + corpus.label_name(query) + "\" does not occur in timestamp " + std::to_string(t));
    std::vector<double> sum(static_cast<std::size_t>(corpus.n_labels()), 0.0);
    std::vector<long> count(static_cast<std::size_t>(corpus.n_labels()), 0);
    const auto [first, last] = corpus.frame_range(t);
    for (int f = first; f < last; ++f) {
        const auto frame = corpus.frame(f);
        for (const auto& q : frame) {
            if (q.label != query) continue;
            for (const auto& c : frame) {
                if (c.label == query) continue;
                sum[static_cast<std::size_t>(c.label)] += std::hypot(q.cx - c.cx, q.cy - c.cy);
                ++count[static_cast<std::size_t>(c.label)];
            }
        }
    }
    NeighborList out{query, t, {}};
    for (LabelId c = 0; c < corpus.n_labels(); ++c)
        if (count[static_cast<std::size_t>(c)] > 0)
            out.neighbors.push_back({c, sum[static_cast<std::size_t>(c)] / static_cast<double>(count[static_cast<std::size_t>(c)])});
    std::sort(out.neighbors.begin(), out.neighbors.end(), [](const Neighbor& x, const Neighbor& y) {
        if (x.value != y.value) return x.value < y.value;
        return x.label < y.label;
    });
    if (out.neighbors.size() > static_cast<std::size_t>(k)) out.neighbors.resize(static_cast<std::size_t>(k));
    return out;
}

std::vector<std::pair<LabelId, int>> default_hit_sample(const Corpus& corpus) {
    std::vector<std::pair<LabelId, int>> out;
    for (LabelId l = 0; l < corpus.n_labels(); ++l)
        for (int t = 0; t < corpus.n_timestamps(); ++t)
            if (corpus.present(l, t)) out.emplace_back(l, t);
    return out;
}

double hit_at_k(const Embedding& emb, const Corpus& corpus, int k, const std::vector<std::pair<LabelId, int>>& sample) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    if (sample.empty()) fail(ErrorCode::InvalidArgument, "hit@k needs a nonempty sample");
    if (emb.labels() != corpus.labels()) fail(ErrorCode::InvalidArgument, "embedding and corpus label tables differ");
    double total = 0.0;
    for (const auto& [label, t] : sample) {
        const auto base = base_neighbors(corpus, label, t, k);
        const auto mine = nearest_neighbors(emb, label, emb.temporal() ? std::optional<int>(t) : std::nullopt, k);
        int hits = 0;
        for (const auto& b : base.neighbors)
            for (const auto& e : mine.neighbors)
                if (b.label == e.label) ++hits;
        total += static_cast<double>(hits) / static_cast<double>(k);
    }
    return total / static_cast<double>(sample.size());
}

double silhouette(const Embedding& emb, const std::vector<int>& assignment, int t) {
    const int n = emb.n_objects();
    if (static_cast<int>(assignment.size()) != n) fail(ErrorCode::InvalidArgument, "assignment length differs from label count");
    const std::size_t dim = static_cast<std::size_t>(emb.dim());
    const auto rows = unit_rows(emb, t);
    const int k = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignment) {
        if (a < 0) fail(ErrorCode::InvalidArgument, "negative cluster id");
        ++sizes[static_cast<std::size_t>(a)];
    }
    double total = 0.0;
    std::vector<double> sum(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) {
        const int own = assignment[static_cast<std::size_t>(i)];
        if (sizes[static_cast<std::size_t>(own)] <= 1) continue;
        std::fill(sum.begin(), sum.end(), 0.0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            sum[static_cast<std::size_t>(assignment[static_cast<std::size_t>(j)])] +=
                cos_dist(row_dot(rows, dim, static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
        const double a = sum[static_cast<std::size_t>(own)] / (sizes[static_cast<std::size_t>(own)] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c)
            if (c != own && sizes[static_cast<std::size_t>(c)] > 0)
                b = std::min(b, sum[static_cast<std::size_t>(c)] / sizes[static_cast<std::size_t>(c)]);
        if (!std::isfinite(b)) continue;
        const double m = std::max(a, b);
        if (m > 0.0) total += (b - a) / m;
    }
    return n > 0 ? total / n : 0.0;
}

ClusterResult kmeans_silhouette(const Embedding& emb, int k, std::uint64_t seed) {
    if (emb.temporal()) fail(ErrorCode::InvalidArgument, "k-means expects a static embedding");
    const int n = emb.n_objects();
    if (k < 2) fail(ErrorCode::InvalidArgument, "k must be at least 2");
    if (n < k) fail(ErrorCode::InvalidArgument, "fewer labels than clusters");
    const std::size_t dim = static_cast<std::size_t>(emb.dim());
    const auto rows = unit_rows(emb, 0);
    const auto un = static_cast<std::size_t>(n);
    const auto uk = static_cast<std::size_t>(k);

    // Need at least k distinct directions.
    {
        int distinct = 0;
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < un && distinct < k; ++i) {
            bool fresh = true;
            for (std::size_t r : reps)
                if (cos_dist(row_dot(rows, dim, i, r)) < 1e-12) fresh = false;
            if (fresh) {
                reps.push_back(i);
                ++distinct;
            }
        }
        if (distinct < k) fail(ErrorCode::Degenerate, "fewer than k distinct points; clustering is degenerate");
    }

    std::mt19937_64 rng(seed);
    constexpr int kRestarts = 10;
    constexpr int kMaxIter = 100;
    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> centroids(uk * dim);
    std::vector<int> assign(un);

    for (int restart = 0; restart < kRestarts; ++restart) {
        // k-means++ seeding on squared cosine distance.
        std::vector<std::size_t> chosen{std::uniform_int_distribution<std::size_t>(0, un - 1)(rng)};
        std::vector<double> d2(un);
        while (chosen.size() < uk) {
            for (std::size_t i = 0; i < un; ++i) {
                double m = std::numeric_limits<double>::infinity();
                for (std::size_t c : chosen) m = std::min(m, cos_dist(row_dot(rows, dim, i, c)));
                d2[i] = m * m;
            }
            if (std::accumulate(d2.begin(), d2.end(), 0.0) <= 0.0) break;
            std::discrete_distribution<std::size_t> pick(d2.begin(), d2.end());
            chosen.push_back(pick(rng));
        }
        if (chosen.size() < uk) continue;
        for (std::size_t c = 0; c < uk; ++c)
            std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(chosen[c] * dim), dim,
                        centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));

        bool empty = false;
        std::fill(assign.begin(), assign.end(), -1);
        for (int iter = 0; iter < kMaxIter; ++iter) {
            bool changed = false;
            for (std::size_t i = 0; i < un; ++i) {
                int arg = 0;
                double top = -std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < uk; ++c) {
                    double s = 0.0;
                    for (std::size_t d = 0; d < dim; ++d) s += rows[i * dim + d] * centroids[c * dim + d];
                    if (s > top) {
                        top = s;
                        arg = static_cast<int>(c);
                    }
                }
                if (assign[i] != arg) {
                    assign[i] = arg;
                    changed = true;
                }
            }
            std::fill(centroids.begin(), centroids.end(), 0.0);
            std::vector<int> sizes(uk, 0);
            for (std::size_t i = 0; i < un; ++i) {
                const auto c = static_cast<std::size_t>(assign[i]);
                ++sizes[c];
                for (std::size_t d = 0; d < dim; ++d) centroids[c * dim + d] += rows[i * dim + d];
            }
            for (std::size_t c = 0; c < uk; ++c) {
                double nn = 0.0;
                for (std::size_t d = 0; d < dim; ++d) nn += centroids[c * dim + d] * centroids[c * dim + d];
                if (sizes[c] == 0 || nn == 0.0) {
                    empty = true;
                    break;
                }
                nn = std::sqrt(nn);
                for (std::size_t d = 0; d < dim; ++d) centroids[c * dim + d] /= nn;
            }
            if (empty || !changed) break;
        }
        if (empty) continue;

        double cost = 0.0;
        for (std::size_t i = 0; i < un; ++i) {
            const auto c = static_cast<std::size_t>(assign[i]);
            double s = 0.0;
            for (std::size_t d = 0; d < dim; ++d) s += rows[i * dim + d] * centroids[c * dim + d];
            cost += cos_dist(s);
        }
        if (cost < best_cost - 1e-12) {
            best_cost = cost;
            best = assign;
        }
    }
    if (best.empty()) fail(ErrorCode::Degenerate, "k-means produced an empty cluster on every restart");

    // Canonical cluster ids: order of first appearance.
    std::vector<int> remap(uk, -1);
    int next = 0;
    for (int& a : best) {
        auto& r = remap[static_cast<std::size_t>(a)];
        if (r < 0) r = next++;
        a = r;
    }
    ClusterResult out;
    out.silhouette = silhouette(emb, best, 0);
    out.assignment = std::move(best);
    return out;
}

double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "partitions differ in length");
    const std::size_t n = a.size();
    if (n < 2) return 1.0;
    std::uint64_t agree = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ++total;
            if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
        }
    return static_cast<double>(agree) / static_cast<double>(total);
}

double clustering_consistency(const Embedding& emb, const std::vector<int>& categories, int k, std::optional<int> t) {
    if (static_cast<int>(categories.size()) != emb.n_objects())
        fail(ErrorCode::InvalidArgument, "category table length differs from label count");
    for (std::size_t i = 0; i < categories.size(); ++i)
        if (categories[i] < 0) fail(ErrorCode::InvalidArgument, "label \"" + emb.labels()[i] + "\" has no category");
    if (emb.n_objects() < 2) return 1.0;
    double total = 0.0;
    for (LabelId q = 0; q < emb.n_objects(); ++q) {
        const auto nl = nearest_neighbors(emb, q, t, k);
        int same = 0;
        for (const auto& nb : nl.neighbors)
            if (categories[static_cast<std::size_t>(nb.label)] == categories[static_cast<std::size_t>(q)]) ++same;
        total += static_cast<double>(same) / static_cast<double>(nl.neighbors.size());
    }
    return total / emb.n_objects();
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t m = i; m <= j; ++m) ranks[idx[m]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "rankings differ in length");
    if (a.size() < 2) fail(ErrorCode::InvalidArgument, "spearman needs at least two items");
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) fail(ErrorCode::Degenerate, "constant ranking; correlation undefined");
    return sab / std::sqrt(saa * sbb);
}

std::vector<double> similarity_series(const Embedding& emb, LabelId a, LabelId b) {
    check_label(emb, a);
    check_label(emb, b);
    std::vector<double> out;
    for (int t = 0; t < emb.n_timestamps(); ++t) out.push_back(cosine_similarity(emb.vec(a, t), emb.vec(b, t)));
    return out;
}

std::vector<SimilarPair> top_pairs(const Embedding& emb, int t, int m) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be at least 1");
    const int slice = resolve_slice(emb, !emb.temporal() && t < 0 ? 0 : t);
    std::vector<SimilarPair> all;
    for (LabelId a = 0; a < emb.n_objects(); ++a)
        for (LabelId b = a + 1; b < emb.n_objects(); ++b)
            all.push_back({a, b, cosine_similarity(emb.vec(a, slice), emb.vec(b, slice))});
    const std::size_t keep = std::min(all.size(), static_cast<std::size_t>(m));
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      [](const SimilarPair& x, const SimilarPair& y) {
                          if (x.similarity != y.similarity) return x.similarity > y.similarity;
                          if (x.a != y.a) return x.a < y.a;
                          return x.b < y.b;
                      });
    all.resize(keep);
    return all;
}

const char* const kNarrativeHeader =
    "A security camera captured the following object pairs at different time, can you summarize the video:";

std::string narrative_prompt(const Embedding& emb, int m_per_t) {
    if (!emb.temporal()) fail(ErrorCode::InvalidArgument, "narrative prompts need a temporal embedding");
    if (m_per_t < 0) fail(ErrorCode::InvalidArgument, "pairs per timestamp must be nonnegative");
    std::ostringstream os;
    os << kNarrativeHeader << "\n";
    if (m_per_t == 0) {
        log_warning("narrative prompt requested with zero pairs per timestamp; writing the header only");
        return os.str();
    }
    for (int t = 0; t < emb.n_timestamps(); ++t) {
        os << "Time " << t << ":";
        const auto pairs = top_pairs(emb, t, m_per_t);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            os << (i ? ", " : " ") << "(" << emb.labels()[static_cast<std::size_t>(pairs[i].a)] << ", "
               << emb.labels()[static_cast<std::size_t>(pairs[i].b)] << ")";
        os << "\n";
    }
    return os.str();
}

std::vector<std::array<double, 2>> pca_2d(const Embedding& emb, std::optional<int> t) {
    if (emb.dim() < 2) fail(ErrorCode::InvalidArgument, "PCA needs at least 2 embedding dimensions");
    const int slice = resolve_slice(emb, t);
    const int n = emb.n_objects();
    Eigen::MatrixXd x(n, emb.dim());
    for (int i = 0; i < n; ++i) {
        const auto v = emb.vec(i, slice);
        for (int d = 0; d < emb.dim(); ++d) x(i, d) = v[static_cast<std::size_t>(d)];
    }
    x.rowwise() -= x.colwise().mean();
    const Eigen::MatrixXd cov = (x.transpose() * x) / std::max(1, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) fail(ErrorCode::Degenerate, "eigen-decomposition failed");
    const auto& values = solver.eigenvalues();  // ascending
    const int dim = emb.dim();
    const double top = values(dim - 1);
    std::vector<std::array<double, 2>> out(static_cast<std::size_t>(n), {0.0, 0.0});
    for (int axis = 0; axis < 2; ++axis) {
        const double lambda = values(dim - 1 - axis);
        if (!(lambda > 1e-10 * std::max(top, 1e-300))) {
            log_warning("embedding slice has rank < 2; PCA axis " + std::to_string(axis + 1) + " set to zero");
            continue;
        }
        Eigen::VectorXd proj = x * solver.eigenvectors().col(dim - 1 - axis);
        Eigen::Index arg = 0;
        for (Eigen::Index i = 1; i < proj.size(); ++i)
            if (std::abs(proj(i)) > std::abs(proj(arg)) + 1e-12) arg = i;
        if (proj(arg) < 0) proj = -proj;
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] = proj(i);
    }
    return out;
}

namespace {

std::vector<double> concat_features(const Embedding& emb, LabelId label) {
    std::vector<double> f;
    f.reserve(static_cast<std::size_t>(emb.n_timestamps() * emb.dim()));
    for (int t = 0; t < emb.n_timestamps(); ++t) {
        const auto v = emb.vec(label, t);
        f.insert(f.end(), v.begin(), v.end());
    }
    return f;
}

}  // namespace

ClassifyResult classify_contexts(const Embedding& emb, const std::vector<int>& classes, std::uint64_t split_seed,
                                 double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        fail(ErrorCode::InvalidArgument, "train_fraction must lie in (0,1)");
    if (static_cast<int>(classes.size()) != emb.n_objects())
        fail(ErrorCode::InvalidArgument, "class table length differs from label count");
    std::vector<LabelId> items;
    int n_classes = 0;
    for (LabelId l = 0; l < emb.n_objects(); ++l)
        if (classes[static_cast<std::size_t>(l)] >= 0) {
            items.push_back(l);
            n_classes = std::max(n_classes, classes[static_cast<std::size_t>(l)] + 1);
        }
    {
        std::vector<char> seen(static_cast<std::size_t>(n_classes), 0);
        int distinct = 0;
        for (LabelId l : items)
            if (!seen[static_cast<std::size_t>(classes[static_cast<std::size_t>(l)])]++) ++distinct;
        if (distinct < 2) fail(ErrorCode::InvalidArgument, "classification needs at least two classes");
    }
    const std::size_t n = items.size();
    const std::size_t n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n))), 1, n - 1);

    std::vector<std::vector<double>> features;
    for (LabelId l : items) features.push_back(concat_features(emb, l));
    const std::size_t width = features.front().size();

    std::mt19937_64 rng(split_seed);
    constexpr int kAttempts = 20;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::vector<double>> centroid(static_cast<std::size_t>(n_classes), std::vector<double>(width, 0.0));
        std::vector<int> members(static_cast<std::size_t>(n_classes), 0);
        for (std::size_t i = 0; i < n_train; ++i) {
            const auto c = static_cast<std::size_t>(classes[static_cast<std::size_t>(items[order[i]])]);
            ++members[c];
            for (std::size_t d = 0; d < width; ++d) centroid[c][d] += features[order[i]][d];
        }
        bool missing = false;
        for (std::size_t i = n_train; i < n; ++i)
            if (members[static_cast<std::size_t>(classes[static_cast<std::size_t>(items[order[i]])])] == 0) missing = true;
        if (missing) continue;
        int correct = 0;
        for (std::size_t i = n_train; i < n; ++i) {
            int arg = -1;
            double top = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < n_classes; ++c) {
                if (members[static_cast<std::size_t>(c)] == 0) continue;
                const double s = cosine_similarity(features[order[i]], centroid[static_cast<std::size_t>(c)]);
                if (s > top) {
                    top = s;
                    arg = c;
                }
            }
            if (arg == classes[static_cast<std::size_t>(items[order[i]])]) ++correct;
        }
        ClassifyResult r;
        r.n_train = static_cast<int>(n_train);
        r.n_test = static_cast<int>(n - n_train);
        r.accuracy = static_cast<double>(correct) / static_cast<double>(r.n_test);
        return r;
    }
    fail(ErrorCode::Degenerate, "could not find a split with every test class present in training");
}

double permutation_baseline(const Embedding& emb, const std::vector<int>& classes, std::uint64_t split_seed,
                            double train_fraction, int n_permutations, std::uint64_t permutation_seed) {
    if (n_permutations < 1) fail(ErrorCode::InvalidArgument, "need at least one permutation");
    std::vector<std::size_t> labelled;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] >= 0) labelled.push_back(i);
    std::mt19937_64 rng(permutation_seed);
    double total = 0.0;
    for (int p = 0; p < n_permutations; ++p) {
        std::vector<int> values;
        for (std::size_t i : labelled) values.push_back(classes[i]);
        std::shuffle(values.begin(), values.end(), rng);
        std::vector<int> shuffled = classes;
        for (std::size_t j = 0; j < labelled.size(); ++j) shuffled[labelled[j]] = values[j];
        total += classify_contexts(emb, shuffled, split_seed, train_fraction).accuracy;
    }
    return total / n_permutations;
}

}  // namespace vizobj
