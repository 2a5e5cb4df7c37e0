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

#include "context.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "error.hpp"
#include "io.hpp"
#include "log.hpp"

namespace vizobj {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

bool contains_sorted(const std::vector<LabelId>& sorted, LabelId label) {
    return std::binary_search(sorted.begin(), sorted.end(), label);
}

}  // namespace

void ContextConfig::validate(const Corpus& corpus) const {
    const auto& m = mechanisms;
    if (!m.same_frame && !m.surrounding_frames && !m.neighbor_timestamps)
        fail(ErrorCode::Config, "at least one context mechanism must be enabled");
    if (m.surrounding_frames && w_f < 1) fail(ErrorCode::Config, "surrounding-frame context needs w_f >= 1");
    if (m.neighbor_timestamps) {
        if (w_t < 1) fail(ErrorCode::Config, "neighbor-timestamp context needs w_t >= 1");
        if (!temporal) fail(ErrorCode::Config, "neighbor-timestamp context only applies to temporal training data");
        if (corpus.n_timestamps() < 2) fail(ErrorCode::Config, "neighbor-timestamp context needs at least 2 timestamps");
    }
    if (w_f < 0 || w_t < 0) fail(ErrorCode::Config, "window radii must be nonnegative");
    if (negatives_per_positive < 0) fail(ErrorCode::Config, "negatives per positive must be nonnegative");
    if (!(sigma_t > 0.0)) fail(ErrorCode::Config, "sigma_t must be positive");
}

std::vector<TrainingPair> pairs_same_frame(const Corpus& corpus, const DiscrepancyScorer& scorer, bool temporal) {
    scorer.validate();
    std::vector<TrainingPair> out;
    for (int f = 0; f < corpus.n_frames(); ++f) {
        const auto frame = corpus.frame(f);
        const int t = temporal ? corpus.timestamp_of(f) : -1;
        for (const auto& ref : frame) {
            for (const auto& ctx : frame) {
                if (ref.label == ctx.label) continue;
                out.push_back({ref.label, ctx.label, t, clamp01(scorer(ref, ctx)), PairKind::Positive, f});
            }
        }
    }
    return out;
}

std::vector<TrainingPair> pairs_surrounding_frames(const Corpus& corpus, int w_f, const DiscrepancyScorer& scorer,
                                                   bool frame_diffusion, double sigma_t, bool temporal) {
    scorer.validate();
    std::vector<TrainingPair> out;
    if (w_f <= 0) return out;
    const int n_frames = corpus.n_frames();
    for (int r = 0; r < n_frames; ++r) {
        const auto ref_frame = corpus.frame(r);
        if (ref_frame.empty()) continue;
        const auto ref_labels = corpus.labels_in_frame(r);
        const int t = temporal ? corpus.timestamp_of(r) : -1;
        const int first = std::max(0, r - w_f);
        const int last = std::min(n_frames - 1, r + w_f);
        for (const auto& ref : ref_frame) {
            for (int k = first; k <= last; ++k) {
                if (k == r) continue;
                const double damping = frame_diffusion ? 1.0 - gaussian_density(k - r, sigma_t) : 1.0;
                for (const auto& ctx : corpus.frame(k)) {
                    if (contains_sorted(ref_labels, ctx.label)) continue;
                    out.push_back({ref.label, ctx.label, t, clamp01(scorer(ref, ctx) * damping), PairKind::Positive, r});
                }
            }
        }
    }
    return out;
}

std::vector<TrainingPair> pairs_neighbor_timestamps(const Corpus& corpus, int w_t, const DiscrepancyScorer& scorer,
                                                    double sigma_t) {
    scorer.validate();
    std::vector<TrainingPair> out;
    if (w_t <= 0) return out;
    const int n_ts = corpus.n_timestamps();
    for (int t_r = 0; t_r < n_ts; ++t_r) {
        // Candidate contexts: instances in neighbouring timestamps whose label never occurs in t_r.
        struct Candidate {
            const ObjectInstance* inst;
            double damping;
        };
        std::vector<Candidate> candidates;
        for (int t_c = std::max(0, t_r - w_t); t_c <= std::min(n_ts - 1, t_r + w_t); ++t_c) {
            if (t_c == t_r) continue;
            const double damping = 1.0 - gaussian_density(t_c - t_r, sigma_t);
            const auto [first, last] = corpus.frame_range(t_c);
            for (int f = first; f < last; ++f)
                for (const auto& inst : corpus.frame(f))
                    if (!corpus.present(inst.label, t_r)) candidates.push_back({&inst, damping});
        }
        if (candidates.empty()) continue;
        const auto [first, last] = corpus.frame_range(t_r);
        for (int f = first; f < last; ++f) {
            for (const auto& ref : corpus.frame(f)) {
                for (const auto& c : candidates) {
                    out.push_back({ref.label, c.inst->label, t_r, clamp01(scorer(ref, *c.inst) * c.damping),
                                   PairKind::Positive, f});
                }
            }
        }
    }
    return out;
}

std::vector<double> negative_weights(const Corpus& corpus, int t_ref, const std::vector<LabelId>& excluded) {
    std::vector<double> w(static_cast<std::size_t>(corpus.n_labels()), 0.0);
    double total = 0.0;
    for (LabelId k = 0; k < corpus.n_labels(); ++k) {
        if (std::find(excluded.begin(), excluded.end(), k) != excluded.end()) continue;
        const int outside = corpus.total_frequency(k) - (t_ref >= 0 ? corpus.frequency(k, t_ref) : 0);
        w[static_cast<std::size_t>(k)] = static_cast<double>(std::max(0, outside));
        total += w[static_cast<std::size_t>(k)];
    }
    if (total > 0.0)
        for (auto& v : w) v /= total;
    return w;
}

std::vector<TrainingPair> negative_samples(const Corpus& corpus, const std::vector<TrainingPair>& positives, int n_neg,
                                           std::uint64_t rng_seed, int w_f) {
    if (n_neg < 0) fail(ErrorCode::InvalidArgument, "negatives per positive must be nonnegative");
    if (n_neg == 0) return positives;

    // One sampling distribution per reference window: the timestamp for temporal
    // pairs, the reference frame (+- w_f) for static pairs, the whole video otherwise.
    struct Window {
        std::discrete_distribution<int> dist;
        std::vector<double> probs;
        bool empty = true;
    };
    std::map<std::pair<int, int>, Window> windows;
    auto window_for = [&](const TrainingPair& p) -> Window& {
        const std::pair<int, int> key = p.temporal() ? std::pair{0, p.t_ref} : std::pair{1, p.ref_frame};
        auto it = windows.find(key);
        if (it != windows.end()) return it->second;
        std::vector<LabelId> excluded;
        if (p.temporal()) {
            for (LabelId k = 0; k < corpus.n_labels(); ++k)
                if (corpus.present(k, p.t_ref)) excluded.push_back(k);
        } else if (p.ref_frame >= 0) {
            const int first = std::max(0, p.ref_frame - w_f);
            const int last = std::min(corpus.n_frames() - 1, p.ref_frame + w_f);
            for (int f = first; f <= last; ++f)
                for (LabelId k : corpus.labels_in_frame(f)) excluded.push_back(k);
        }
        Window w;
        w.probs = negative_weights(corpus, p.temporal() ? p.t_ref : -1, excluded);
        w.empty = std::all_of(w.probs.begin(), w.probs.end(), [](double v) { return v == 0.0; });
        if (!w.empty) w.dist = std::discrete_distribution<int>(w.probs.begin(), w.probs.end());
        return windows.emplace(key, std::move(w)).first->second;
    };

    std::mt19937_64 rng(rng_seed);
    std::vector<TrainingPair> out;
    out.reserve(positives.size() * static_cast<std::size_t>(n_neg + 1));
    std::size_t starved = 0;
    for (const auto& p : positives) {
        out.push_back(p);
        if (p.kind != PairKind::Positive) continue;
        Window& w = window_for(p);
        auto weight_of = [&](LabelId k) { return w.probs[static_cast<std::size_t>(k)]; };
        const double usable = 1.0 - weight_of(p.ref) - weight_of(p.ctx);
        if (w.empty || usable <= 1e-12) {
            ++starved;
            continue;
        }
        for (int i = 0; i < n_neg; ++i) {
            LabelId pick = 0;
            // The window already excludes the reference; rejecting the pair's own
            // labels conditions the distribution on the remaining candidates.
            do {
                pick = static_cast<LabelId>(w.dist(rng));
            } while (pick == p.ref || pick == p.ctx);
            out.push_back({p.ref, pick, p.t_ref, 1.0, PairKind::Negative, p.ref_frame});
        }
    }
    if (starved > 0)
        log_info(std::to_string(starved) + " positive pair(s) had no eligible negative candidates");
    return out;
}

std::vector<TrainingPair> generate_pairs(const Corpus& corpus, const ContextConfig& config,
                                         const DiscrepancyScorer& scorer, std::uint64_t rng_seed) {
    config.validate(corpus);
    std::vector<TrainingPair> positives;
    auto append = [&](std::vector<TrainingPair> more) {
        positives.insert(positives.end(), more.begin(), more.end());
    };
    if (config.mechanisms.same_frame) append(pairs_same_frame(corpus, scorer, config.temporal));
    if (config.mechanisms.surrounding_frames)
        append(pairs_surrounding_frames(corpus, config.w_f, scorer, config.frame_diffusion, config.sigma_t,
                                        config.temporal));
    if (config.mechanisms.neighbor_timestamps)
        append(pairs_neighbor_timestamps(corpus, config.w_t, scorer, config.sigma_t));
    const int window = config.mechanisms.surrounding_frames ? config.w_f : 0;
    return negative_samples(corpus, positives, config.negatives_per_positive, rng_seed, window);
}

// ---------------------------------------------------------------------------
// Pair files

namespace {

constexpr const char* kPairHeader = "ref,ctx,t_ref,delta,kind";

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

}  // namespace

void write_pairs_csv(std::ostream& out, const std::vector<TrainingPair>& pairs, const Corpus& corpus) {
    out << kPairHeader << "\n";
    for (const auto& p : pairs) {
        out << csv_field(corpus.label_name(p.ref)) << ',' << csv_field(corpus.label_name(p.ctx)) << ',' << p.t_ref
            << ',' << format_double(p.delta) << ',' << (p.kind == PairKind::Positive ? "positive" : "negative")
            << "\n";
    }
}

void save_pairs(const std::filesystem::path& path, const std::vector<TrainingPair>& pairs, const Corpus& corpus) {
    std::ostringstream os;
    write_pairs_csv(os, pairs, corpus);
    write_file_atomic(path, os.str());
}

std::vector<TrainingPair> read_pairs_csv(std::istream& in, const Corpus& corpus) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::Parse, "pair file is empty (header row required)");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kPairHeader) fail(ErrorCode::Parse, "pair file header must be '" + std::string(kPairHeader) + "'");
    std::vector<TrainingPair> pairs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::Parse, "pair file line " + std::to_string(lineno) + ": " + why);
        };
        if (f.size() != 5) bad("expected 5 fields");
        TrainingPair p;
        auto ref = corpus.find_label(f[0]);
        auto ctx = corpus.find_label(f[1]);
        if (!ref || !ctx) bad("label not in corpus");
        p.ref = *ref;
        p.ctx = *ctx;
        try {
            std::size_t used = 0;
            p.t_ref = std::stoi(f[2], &used);
            if (used != f[2].size()) bad("bad t_ref");
            p.delta = std::stod(f[3], &used);
            if (used != f[3].size()) bad("bad delta");
        } catch (const std::logic_error&) {
            bad("non-numeric t_ref or delta");
        }
        if (p.t_ref < -1 || p.t_ref >= corpus.n_timestamps()) bad("t_ref out of range");
        if (!(p.delta >= 0.0 && p.delta <= 1.0)) bad("delta outside [0,1]");
        if (f[4] == "positive") {
            p.kind = PairKind::Positive;
        } else if (f[4] == "negative") {
            p.kind = PairKind::Negative;
            if (p.delta != 1.0) bad("negative pair must have delta = 1");
        } else {
            bad("kind must be positive or negative");
        }
        pairs.push_back(p);
    }
    return pairs;
}

std::vector<TrainingPair> load_pairs(const std::filesystem::path& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open pair file " + path.string());
    return read_pairs_csv(in, corpus);
}

}  // namespace vizobj
