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

// Command-line front end. Talks to the library only through its C API.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "vizobj/vizobj.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Failure {
    vz_status status;
    std::string message;
};

void check(vz_status status) {
    if (status != VZ_OK) throw Failure{status, vz_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw Failure{VZ_ERR_INVALID_ARGUMENT, message}; }

std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Failure{VZ_ERR_IO, "cannot write " + path.string()};
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Failure{VZ_ERR_IO, "cannot replace " + path.string()};
    }
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{VZ_ERR_IO, "cannot open " + path.string()};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using ConfigPtr = std::unique_ptr<vz_config, Deleter<vz_config, vz_config_free>>;
using CorpusPtr = std::unique_ptr<vz_corpus, Deleter<vz_corpus, vz_corpus_free>>;
using PairsPtr = std::unique_ptr<vz_pairs, Deleter<vz_pairs, vz_pairs_free>>;
using EmbeddingPtr = std::unique_ptr<vz_embedding, Deleter<vz_embedding, vz_embedding_free>>;

std::string config_get(const vz_config* c, const std::string& key) {
    size_t need = 0;
    check(vz_config_get(c, key.c_str(), nullptr, 0, &need));
    std::string s(need, '\0');
    check(vz_config_get(c, key.c_str(), s.data(), s.size(), &need));
    s.resize(need - 1);
    return s;
}

json config_json(const vz_config* c) {
    json j = json::object();
    for (size_t i = 0; i < vz_config_key_count(); ++i) {
        const char* key = nullptr;
        check(vz_config_key_info(i, &key, nullptr));
        j[key] = config_get(c, key);
    }
    return j;
}

int config_int(const vz_config* c, const std::string& key) { return std::stoi(config_get(c, key)); }

EmbeddingPtr load_embedding(const std::string& path) {
    vz_embedding* e = nullptr;
    check(vz_embedding_load(path.c_str(), &e));
    return EmbeddingPtr(e);
}

CorpusPtr load_corpus(const std::string& path, int n_timestamps) {
    vz_corpus* c = nullptr;
    check(vz_corpus_ingest(path.c_str(), n_timestamps, &c));
    return CorpusPtr(c);
}

int32_t embedding_label(const vz_embedding* e, const std::string& name) {
    int32_t id = 0;
    check(vz_embedding_label_id(e, name.c_str(), &id));
    return id;
}

std::string embedding_label_name(const vz_embedding* e, int32_t id) {
    const char* name = nullptr;
    check(vz_embedding_label_name(e, id, &name));
    return name;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Shared state: the raw argument list for manifests and the config overlay.
struct Run {
    std::vector<std::string> args;
    std::string config_file;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;

    ConfigPtr build_config() const {
        vz_config* raw = nullptr;
        check(vz_config_new(&raw));
        ConfigPtr c(raw);
        if (!config_file.empty()) check(vz_config_load(c.get(), config_file.c_str()));
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) usage_error("--set expects key=value, got '" + kv + "'");
            check(vz_config_set(c.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
        }
        for (const auto& [key, value] : flags) check(vz_config_set(c.get(), key.c_str(), value.c_str()));
        check(vz_config_validate(c.get()));
        return c;
    }

    void manifest(const fs::path& output, const std::string& command, json extra) const {
        json m = json::object();
        m["tool"] = "vizobj";
        m["version"] = vz_version();
        m["command"] = command;
        m["args"] = args;
        m["output"] = output.filename().string();
        for (auto& [k, v] : extra.items()) m[k] = v;
        write_atomic(fs::path(output.string() + ".manifest.json"), m.dump(2) + "\n");
    }
};

void add_config_options(CLI::App* cmd, Run& run) {
    cmd->add_option("--config", run.config_file, "key = value configuration file (flags override it)");
    cmd->add_option("--set", run.sets, "override any configuration key: --set key=value");
    for (size_t i = 0; i < vz_config_key_count(); ++i) {
        const char* key = nullptr;
        const char* help = nullptr;
        check(vz_config_key_info(i, &key, &help));
        std::string name = key;
        cmd->add_option_function<std::string>(
            "--" + name, [&run, name](const std::string& v) { run.flags[name] = v; }, help);
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = 0;
        const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
        if (r.ec != std::errc() || r.ptr != item.data() + item.size()) usage_error("not an integer list: '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) usage_error("empty integer list");
    return out;
}

/// Class id per embedding label from a ground-truth file with a "classes" map.
std::vector<int> ground_truth_classes(const std::string& path, const vz_embedding* e) {
    json gt = json::parse(read_text(path), nullptr, false);
    if (gt.is_discarded() || !gt.contains("classes") || !gt["classes"].is_object())
        throw Failure{VZ_ERR_PARSE, path + ": no \"classes\" object"};
    std::vector<int> out(static_cast<size_t>(vz_embedding_n_objects(e)), -1);
    for (int32_t i = 0; i < vz_embedding_n_objects(e); ++i) {
        const auto name = embedding_label_name(e, i);
        if (auto it = gt["classes"].find(name); it != gt["classes"].end()) out[static_cast<size_t>(i)] = it->get<int>();
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    Run run;
    for (int i = 1; i < argc; ++i) run.args.emplace_back(argv[i]);

    CLI::App app{"vizobj: context-aware object embeddings from video annotations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vz_version()));

    // gen
    std::string scenario = "grid5x5", out;
    int frames = 2000, gen_timestamps = 10;
    uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "write a synthetic scenario (annotations.jsonl + ground_truth.json)");
    gen->add_option("--scenario", scenario, "grid5x5, seq4, school_event or two_scene")->capture_default_str();
    gen->add_option("--frames", frames, "number of frames")->capture_default_str();
    gen->add_option("--timestamps", gen_timestamps, "timestamps of the school scenario")->capture_default_str();
    gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen->add_option("--out", out, "output directory")->required();

    // pairs
    std::string corpus_path, pairs_path;
    auto* pairs = app.add_subcommand("pairs", "extract scored reference/context pairs to CSV");
    pairs->add_option("--corpus", corpus_path, "annotation file (JSON lines)")->required();
    pairs->add_option("--out", out, "output CSV")->required();
    add_config_options(pairs, run);

    // train
    auto* train = app.add_subcommand("train", "train an embedding table from a pair CSV");
    train->add_option("--corpus", corpus_path, "annotation file the pairs came from")->required();
    train->add_option("--pairs", pairs_path, "pair CSV")->required();
    train->add_option("--out", out, "embedding header path (payload goes to <out>.bin)")->required();
    add_config_options(train, run);

    // eval
    std::vector<std::string> embedding_paths;
    std::string metric = "hit_at_k", k_list = "1,3,5,10", ground_truth;
    int eval_timestamps = 0;
    uint64_t eval_seed = 0;
    double train_fraction = 0.5;
    auto* eval = app.add_subcommand("eval", "evaluate one or more embeddings");
    eval->add_option("--embedding", embedding_paths, "embedding file (repeatable)")->required();
    eval->add_option("--corpus", corpus_path, "annotation file (needed by hit_at_k)");
    eval->add_option("--metric", metric, "hit_at_k, kmeans or classify")->capture_default_str();
    eval->add_option("--k", k_list, "comma-separated k values (first one used by kmeans)")->capture_default_str();
    eval->add_option("--timestamps", eval_timestamps, "corpus partition; defaults to the embedding's")->capture_default_str();
    eval->add_option("--ground-truth", ground_truth, "ground_truth.json with a classes map");
    eval->add_option("--seed", eval_seed, "seed for k-means or the classification split")->capture_default_str();
    eval->add_option("--train-fraction", train_fraction, "classification training share")->capture_default_str();
    eval->add_option("--out", out, "output CSV")->required();

    // nn
    std::string embedding_path, label, label_b;
    int t = -1, k = 10, m = 3;
    auto* nn = app.add_subcommand("nn", "nearest neighbors of one label");
    nn->add_option("--embedding", embedding_path, "embedding file")->required();
    nn->add_option("--label", label, "query label")->required();
    nn->add_option("--t", t, "timestamp (temporal tables)");
    nn->add_option("--k", k, "neighbors to list")->capture_default_str();
    nn->add_option("--out", out, "output CSV (stdout when omitted)");

    // series
    auto* series = app.add_subcommand("series", "cosine similarity of two labels at every timestamp");
    series->add_option("--embedding", embedding_path, "temporal embedding file")->required();
    series->add_option("--a", label, "first label")->required();
    series->add_option("--b", label_b, "second label")->required();
    series->add_option("--out", out, "output CSV (stdout when omitted)");

    // narrate
    auto* narrate = app.add_subcommand("narrate", "text prompt listing the most similar pairs per timestamp");
    narrate->add_option("--embedding", embedding_path, "temporal embedding file")->required();
    narrate->add_option("--m", m, "pairs per timestamp")->capture_default_str();
    narrate->add_option("--out", out, "output text file (stdout when omitted)");

    // pca
    auto* pca = app.add_subcommand("pca", "2D principal-component projection");
    pca->add_option("--embedding", embedding_path, "embedding file")->required();
    pca->add_option("--t", t, "timestamp (all timestamps when omitted)");
    pca->add_option("--out", out, "output CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    auto emit = [&](const std::string& content, const std::string& command, json extra) {
        if (out.empty()) {
            std::cout << content;
            return;
        }
        write_atomic(out, content);
        run.manifest(out, command, std::move(extra));
    };

    try {
        if (*gen) {
            check(vz_generate(scenario.c_str(), frames, gen_timestamps, gen_seed, out.c_str()));
            run.manifest(fs::path(out) / "annotations.jsonl", "gen",
                         {{"scenario", scenario}, {"frames", frames}, {"timestamps", gen_timestamps}, {"seed", gen_seed}});
        } else if (*pairs) {
            auto cfg = run.build_config();
            auto corpus = load_corpus(corpus_path, config_int(cfg.get(), "timestamps"));
            vz_pairs* raw = nullptr;
            check(vz_pairs_generate(corpus.get(), cfg.get(), &raw));
            PairsPtr p(raw);
            check(vz_pairs_save(p.get(), corpus.get(), out.c_str()));
            run.manifest(out, "pairs", {{"corpus", corpus_path}, {"config", config_json(cfg.get())}, {"pairs", vz_pairs_count(p.get())}});
        } else if (*train) {
            auto cfg = run.build_config();
            auto corpus = load_corpus(corpus_path, config_int(cfg.get(), "timestamps"));
            vz_pairs* raw_pairs = nullptr;
            check(vz_pairs_load(pairs_path.c_str(), corpus.get(), &raw_pairs));
            PairsPtr p(raw_pairs);
            vz_embedding* raw = nullptr;
            check(vz_train(p.get(), corpus.get(), cfg.get(), &raw));
            EmbeddingPtr e(raw);
            const double* trace = nullptr;
            size_t n = 0;
            check(vz_embedding_loss_trace(e.get(), &trace, &n));
            std::string loss = "epoch,loss\n";
            for (size_t i = 0; i < n; ++i) loss += std::to_string(i) + "," + fmt(trace[i]) + "\n";
            check(vz_embedding_save(e.get(), out.c_str()));
            write_atomic(out + ".loss.csv", loss);
            run.manifest(out, "train",
                         {{"corpus", corpus_path}, {"pairs", pairs_path}, {"config", config_json(cfg.get())},
                          {"final_loss", n ? trace[n - 1] : 0.0}});
        } else if (*eval) {
            const auto ks = parse_int_list(k_list);
            std::string csv;
            json summary = json::array();
            if (metric == "hit_at_k") {
                if (corpus_path.empty()) usage_error("hit_at_k needs --corpus");
                csv = "objective,k,value\n";
                for (const auto& path : embedding_paths) {
                    auto e = load_embedding(path);
                    const int n_ts = eval_timestamps > 0 ? eval_timestamps : vz_embedding_n_timestamps(e.get());
                    auto corpus = load_corpus(corpus_path, n_ts);
                    std::string objective = vz_embedding_objective(e.get());
                    if (objective.empty()) objective = fs::path(path).stem().string();
                    for (int kk : ks) {
                        double v = 0.0;
                        check(vz_hit_at_k(e.get(), corpus.get(), kk, nullptr, nullptr, 0, &v));
                        csv += csv_field(objective) + "," + std::to_string(kk) + "," + fmt(v) + "\n";
                        summary.push_back({{"objective", objective}, {"k", kk}, {"hit_at_k", v}});
                    }
                }
            } else if (metric == "kmeans") {
                csv = "embedding,label,cluster\n";
                for (const auto& path : embedding_paths) {
                    auto e = load_embedding(path);
                    std::vector<int> assignment(static_cast<size_t>(vz_embedding_n_objects(e.get())));
                    double sil = 0.0;
                    check(vz_kmeans_silhouette(e.get(), ks.front(), eval_seed, assignment.data(), &sil));
                    for (size_t i = 0; i < assignment.size(); ++i)
                        csv += csv_field(fs::path(path).filename().string()) + "," +
                               csv_field(embedding_label_name(e.get(), static_cast<int32_t>(i))) + "," +
                               std::to_string(assignment[i]) + "\n";
                    json s = {{"embedding", path}, {"k", ks.front()}, {"silhouette", sil}};
                    if (!ground_truth.empty()) {
                        auto classes = ground_truth_classes(ground_truth, e.get());
                        double ri = 0.0;
                        check(vz_rand_index(assignment.data(), classes.data(), assignment.size(), &ri));
                        s["rand_index"] = ri;
                    }
                    summary.push_back(s);
                }
            } else if (metric == "classify") {
                if (ground_truth.empty()) usage_error("classify needs --ground-truth");
                csv = "embedding,accuracy,permutation_baseline\n";
                for (const auto& path : embedding_paths) {
                    auto e = load_embedding(path);
                    auto classes = ground_truth_classes(ground_truth, e.get());
                    double acc = 0.0, base = 0.0;
                    check(vz_classify_contexts(e.get(), classes.data(), classes.size(), eval_seed, train_fraction, &acc));
                    check(vz_permutation_baseline(e.get(), classes.data(), classes.size(), eval_seed, train_fraction, 20,
                                                  eval_seed + 1, &base));
                    csv += csv_field(fs::path(path).filename().string()) + "," + fmt(acc) + "," + fmt(base) + "\n";
                    summary.push_back({{"embedding", path}, {"accuracy", acc}, {"permutation_baseline", base}});
                }
            } else {
                usage_error("unknown metric '" + metric + "' (expected hit_at_k, kmeans or classify)");
            }
            write_atomic(out, csv);
            run.manifest(out, "eval", {{"metric", metric}, {"embeddings", embedding_paths}, {"summary", summary}});
        } else if (*nn) {
            auto e = load_embedding(embedding_path);
            const int32_t q = embedding_label(e.get(), label);
            size_t count = 0;
            std::vector<int32_t> ids(static_cast<size_t>(std::max(k, 1)));
            std::vector<double> sims(ids.size());
            check(vz_nearest_neighbors(e.get(), q, t, k, ids.data(), sims.data(), ids.size(), &count));
            std::string csv = "rank,label,similarity\n";
            for (size_t i = 0; i < count; ++i)
                csv += std::to_string(i + 1) + "," + csv_field(embedding_label_name(e.get(), ids[i])) + "," + fmt(sims[i]) + "\n";
            emit(csv, "nn", {{"embedding", embedding_path}, {"label", label}, {"t", t}, {"k", k}});
        } else if (*series) {
            auto e = load_embedding(embedding_path);
            const int32_t a = embedding_label(e.get(), label);
            const int32_t b = embedding_label(e.get(), label_b);
            std::vector<double> values(static_cast<size_t>(vz_embedding_n_timestamps(e.get())));
            size_t count = 0;
            check(vz_similarity_series(e.get(), a, b, values.data(), values.size(), &count));
            std::string csv = "pair,t,similarity\n";
            const std::string pair = csv_field(label + "|" + label_b);
            for (size_t i = 0; i < count; ++i) csv += pair + "," + std::to_string(i) + "," + fmt(values[i]) + "\n";
            emit(csv, "series", {{"embedding", embedding_path}, {"a", label}, {"b", label_b}});
        } else if (*narrate) {
            auto e = load_embedding(embedding_path);
            size_t need = 0;
            check(vz_narrative_prompt(e.get(), m, nullptr, 0, &need));
            std::string text(need, '\0');
            check(vz_narrative_prompt(e.get(), m, text.data(), text.size(), &need));
            text.resize(need - 1);
            emit(text, "narrate", {{"embedding", embedding_path}, {"m", m}});
        } else if (*pca) {
            auto e = load_embedding(embedding_path);
            const int n = vz_embedding_n_objects(e.get());
            std::vector<int> slices;
            if (t >= 0 || !vz_embedding_is_temporal(e.get()))
                slices.push_back(t);
            else
                for (int s = 0; s < vz_embedding_n_timestamps(e.get()); ++s) slices.push_back(s);
            std::string csv = "label,t,x,y\n";
            std::vector<double> xy(2 * static_cast<size_t>(n));
            for (int s : slices) {
                check(vz_pca_2d(e.get(), s, xy.data(), xy.size()));
                for (int i = 0; i < n; ++i)
                    csv += csv_field(embedding_label_name(e.get(), i)) + "," + std::to_string(std::max(s, 0)) + "," +
                           fmt(xy[2 * static_cast<size_t>(i)]) + "," + fmt(xy[2 * static_cast<size_t>(i) + 1]) + "\n";
            }
            emit(csv, "pca", {{"embedding", embedding_path}, {"t", t}});
        }
    } catch (const Failure& f) {
        std::cerr << "vizobj: error: " << vz_status_name(f.status) << ": " << f.message << "\n";
        return f.status == VZ_OK ? 1 : static_cast<int>(f.status);
    } catch (const std::exception& e) {
        std::cerr << "vizobj: error: " << vz_status_name(VZ_ERR_INTERNAL) << ": " << e.what() << "\n";
        return static_cast<int>(VZ_ERR_INTERNAL);
    }
    return 0;
}
