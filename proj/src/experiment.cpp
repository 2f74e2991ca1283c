#include "ssac/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

namespace ssac {

namespace {

using nlohmann::json;

std::string trimmed(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Values from the key-value format arrive as strings; JSON may carry either.
double as_double(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t used = 0;
        try {
            const double d = std::stod(s, &used);
            if (used == s.size()) return d;
        } catch (const std::exception&) {
        }
    }
    throw UsageError(fmt::format("config key '{}' expects a number, got {}", key, v.dump()));
}

std::uint64_t as_unsigned(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t used = 0;
        try {
            if (!s.empty() && s.front() != '-') {
                const auto u = std::stoull(s, &used);
                if (used == s.size()) return u;
            }
        } catch (const std::exception&) {
        }
    }
    throw UsageError(fmt::format("config key '{}' expects a nonnegative integer, got {}", key, v.dump()));
}

std::string as_string(const json& v, const std::string& key) {
    if (v.is_string()) return trimmed(v.get<std::string>());
    if (v.is_number()) return v.dump();
    throw UsageError(fmt::format("config key '{}' expects a string, got {}", key, v.dump()));
}

std::vector<json> as_list(const json& v) {
    if (v.is_array()) return std::vector<json>(v.begin(), v.end());
    if (v.is_string()) {
        std::vector<json> out;
        std::stringstream ss(v.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string t = trimmed(item);
            if (!t.empty()) out.emplace_back(t);
        }
        return out;
    }
    return {v};
}

Variant parse_variant(const std::string& s) {
    if (s == "improved") return Variant::Improved;
    if (s == "vanilla") return Variant::Vanilla;
    throw UsageError("unknown variant '" + s + "' (expected improved or vanilla)");
}

ExperimentConfig from_json(const json& j) {
    if (!j.is_object()) {
        throw UsageError("config must be a JSON object or key-value lines");
    }
    ExperimentConfig cfg;
    for (const auto& [key, v] : j.items()) {
        if (key == "source") {
            const std::string s = as_string(v, key);
            if (s == "synthetic") {
                cfg.source = ExperimentConfig::Source::Synthetic;
            } else if (s == "embedding") {
                cfg.source = ExperimentConfig::Source::Embedding;
            } else {
                throw UsageError("unknown source '" + s + "' (expected synthetic or embedding)");
            }
        } else if (key == "n") {
            cfg.synth.n = as_unsigned(v, key);
        } else if (key == "k") {
            cfg.synth.k = static_cast<int>(as_unsigned(v, key));
        } else if (key == "dim") {
            cfg.synth.dim = as_unsigned(v, key);
        } else if (key == "sigma") {
            cfg.synth.sigma = as_double(v, key);
        } else if (key == "gamma_min") {
            cfg.synth.gamma_min = as_double(v, key);
        } else if (key == "gamma_max") {
            cfg.synth.gamma_max = as_double(v, key);
        } else if (key == "center_box_scale") {
            cfg.synth.center_box_scale = as_double(v, key);
        } else if (key == "max_attempts") {
            cfg.synth.max_attempts = as_unsigned(v, key);
        } else if (key == "embedding") {
            cfg.embedding_path = as_string(v, key);
            cfg.source = ExperimentConfig::Source::Embedding;
        } else if (key == "labels") {
            cfg.labels.clear();
            for (const auto& e : as_list(v)) cfg.labels.insert(static_cast<int>(as_unsigned(e, key)));
        } else if (key == "oracles" || key == "oracle") {
            cfg.oracles.clear();
            for (const auto& e : as_list(v)) cfg.oracles.push_back(as_string(e, key));
        } else if (key == "c_dist") {
            cfg.c_dist.clear();
            for (const auto& e : as_list(v)) cfg.c_dist.push_back(as_double(e, key));
        } else if (key == "eta") {
            cfg.eta.clear();
            for (const auto& e : as_list(v)) cfg.eta.push_back(as_double(e, key));
        } else if (key == "beta") {
            cfg.beta = as_unsigned(v, key);
        } else if (key == "delta") {
            cfg.delta = as_double(v, key);
        } else if (key == "variants" || key == "variant") {
            cfg.variants.clear();
            for (const auto& e : as_list(v)) cfg.variants.push_back(parse_variant(as_string(e, key)));
        } else if (key == "repetitions" || key == "reps") {
            cfg.repetitions = as_unsigned(v, key);
        } else if (key == "seed") {
            cfg.seed = as_unsigned(v, key);
        } else if (key == "out") {
            cfg.out_dir = as_string(v, key);
        } else if (key == "parallel") {
            cfg.parallel = as_unsigned(v, key);
        } else if (key == "epsilon") {
            cfg.epsilon = as_double(v, key);
        } else {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

json parse_key_values(std::string_view text) {
    json j = json::object();
    std::stringstream ss{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trimmed(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        const std::string key = trimmed(body.substr(0, eq));
        if (key.empty()) {
            throw ParseError(line_no, "missing key");
        }
        j[key] = trimmed(body.substr(eq + 1));
    }
    return j;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string cell_label(const CellKey& c) {
    return fmt::format("{}|{}|{}|{}|{}", c.variant, c.oracle, c.c_dist, c.eta, c.beta);
}

double mapping_gamma(const ExtendedReal& gamma) {
    return gamma.is_infinite() ? 1.0 : gamma.value();
}

}  // namespace

void ExperimentConfig::validate() const {
    if (oracles.empty() || c_dist.empty() || eta.empty() || variants.empty()) {
        throw UsageError("oracles, c_dist, eta and variants must each list at least one value");
    }
    if (repetitions < 1) {
        throw UsageError("repetitions must be at least 1");
    }
    for (const auto& o : oracles) {
        if (o != "perfect" && o != "local" && o != "global") {
            throw UsageError("unknown oracle '" + o + "' (expected perfect, local or global)");
        }
    }
    for (double c : c_dist) {
        if (!(c > 0.0 && c <= 1.0)) {
            throw UsageError(fmt::format("c_dist {} outside (0, 1]", c));
        }
    }
    for (double e : eta) {
        if (!(e > 0.0)) {
            throw UsageError(fmt::format("eta {} must be positive", e));
        }
    }
    if (beta < 1) {
        throw UsageError("beta must be at least 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw UsageError(fmt::format("delta {} outside (0, 1)", delta));
    }
    if (source == Source::Synthetic) {
        synth.validate();
    } else if (embedding_path.empty()) {
        throw UsageError("embedding source needs an 'embedding' path");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    const std::string body = trimmed(text);
    if (!body.empty() && body.front() == '{') {
        json j;
        try {
            j = json::parse(body);
        } catch (const json::parse_error& e) {
            throw UsageError(std::string("config JSON: ") + e.what());
        }
        return from_json(j);
    }
    return from_json(parse_key_values(body));
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

std::uint64_t cell_seed(std::uint64_t base, const CellKey& cell, std::size_t rep) {
    return mix_seed(mix_seed(base, fnv1a(cell_label(cell))), rep);
}

std::uint64_t data_seed(std::uint64_t base, std::size_t rep) {
    return mix_seed(base ^ 0xd1b54a32d192ed03ULL, rep);
}

LabeledDataset experiment_dataset(const ExperimentConfig& cfg, std::size_t rep) {
    if (cfg.source == ExperimentConfig::Source::Embedding) {
        return load_embedding(cfg.embedding_path, cfg.labels);
    }
    SynthConfig sc = cfg.synth;
    sc.seed = data_seed(cfg.seed, rep);
    return generate_synthetic(sc);
}

OracleKind oracle_for(const std::string& name, double c_dist, const ExtendedReal& gamma) {
    if (name == "perfect") {
        return OracleKind::perfect();
    }
    const WeakParams wp = map_cdist_params(c_dist, mapping_gamma(gamma));
    if (name == "local") {
        return OracleKind::local(wp.nu, wp.rho);
    }
    if (name == "global") {
        return OracleKind::global(wp.rho);
    }
    throw UsageError("unknown oracle '" + name + "'");
}

std::vector<CellKey> grid_cells(const ExperimentConfig& cfg) {
    std::vector<CellKey> cells;
    for (Variant v : cfg.variants) {
        for (const auto& o : cfg.oracles) {
            for (double c : cfg.c_dist) {
                for (double e : cfg.eta) {
                    cells.push_back(CellKey{to_string(v), o, c, e, cfg.beta});
                }
            }
        }
    }
    return cells;
}

GridResult run_grid(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto cells = grid_cells(cfg);
    const std::size_t reps = cfg.repetitions;
    std::vector<RunResult> runs(cells.size() * reps);

    std::optional<LabeledDataset> shared;
    if (cfg.source == ExperimentConfig::Source::Embedding) {
        shared.emplace(load_embedding(cfg.embedding_path, cfg.labels));
    }

    auto run_rep = [&](std::size_t rep) {
        std::optional<LabeledDataset> own;
        if (!shared) {
            try {
                own.emplace(experiment_dataset(cfg, rep));
            } catch (const GenerationFailure& e) {
                throw GenerationFailure(fmt::format("repetition {}: {}", rep, e.what()));
            }
        }
        const LabeledDataset& data = shared ? *shared : *own;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const CellKey& cell = cells[c];
            const std::uint64_t seed = cell_seed(cfg.seed, cell, rep);
            Oracle oracle(data.dataset, data.truth, oracle_for(cell.oracle, cell.c_dist, data.gamma));
            const Variant variant = parse_variant(cell.variant);
            if (variant == Variant::Vanilla) {
                oracle.enable_random_resolution(mix_seed(seed, 1));
            }
            SsacParams params;
            params.k = data.truth.k();
            params.eta = cell.eta;
            params.beta = cell.beta;
            params.delta = cfg.delta;
            params.variant = variant;
            params.seed = seed;
            const SsacOutput out = run_ssac(data.dataset, oracle, params);
            RunResult res = score(data.dataset, data.truth, out);
            res.cell = cell;
            res.seed = seed;
            res.realized_gamma = data.gamma;
            runs[c * reps + rep] = std::move(res);
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.parallel, reps));
    if (workers == 1) {
        for (std::size_t rep = 0; rep < reps; ++rep) run_rep(rep);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mu;
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t rep = next++; rep < reps; rep = next++) {
                        try {
                            run_rep(rep);
                        } catch (...) {
                            std::lock_guard lock(error_mu);
                            if (!error) error = std::current_exception();
                            next = reps;
                        }
                    }
                });
            }
        }
        if (error) std::rethrow_exception(error);
    }

    GridResult out;
    out.summary = aggregate(runs);
    out.runs = std::move(runs);
    return out;
}

void write_runs_csv(std::ostream& out, const std::vector<RunResult>& runs) {
    out << "variant,oracle,c_dist,eta,beta,seed,accuracy,failed,phase1_failures,queries_p1,queries_p2,"
           "ambiguity_events,realized_gamma,assignment_failures\n";
    for (const auto& r : runs) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.cell.variant, r.cell.oracle, r.cell.c_dist,
                           r.cell.eta, r.cell.beta, r.seed, r.accuracy, r.failed ? 1 : 0, r.phase1_failures,
                           r.queries_phase1, r.queries_phase2, r.ambiguity_events, r.realized_gamma.to_string(),
                           r.assignment_failures);
    }
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
    out << "variant,oracle,c_dist,eta,beta,n_reps,mean_accuracy,std_accuracy,failure_count,mean_queries,"
           "mean_queries_p1,mean_queries_p2,assignment_failures,ambiguity_events,exact_recoveries\n";
    for (const auto& c : cells) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", c.cell.variant, c.cell.oracle,
                           c.cell.c_dist, c.cell.eta, c.cell.beta, c.repetitions, c.mean_accuracy, c.std_accuracy,
                           c.failure_count, c.mean_queries, c.mean_queries_phase1, c.mean_queries_phase2,
                           c.assignment_failures, c.ambiguity_events, c.exact_recoveries);
    }
}

void print_summary(std::ostream& out, const std::vector<CellSummary>& cells) {
    out << fmt::format("{:<9} {:<8} {:>6} {:>5} {:>6} {:>9} {:>8} {:>8} {:>9}\n", "variant", "oracle", "c_dist", "eta",
                       "reps", "accuracy", "std", "failures", "queries");
    for (const auto& c : cells) {
        out << fmt::format("{:<9} {:<8} {:>6} {:>5} {:>6} {:>9.4f} {:>8.4f} {:>8} {:>9.1f}\n", c.cell.variant,
                           c.cell.oracle, c.cell.c_dist, c.cell.eta, c.repetitions, c.mean_accuracy, c.std_accuracy,
                           c.failure_count, c.mean_queries);
    }
}

GridResult run_and_write(const ExperimentConfig& cfg, std::ostream& console) {
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) {
        throw std::runtime_error(fmt::format("cannot create output directory {}: {}", cfg.out_dir.string(),
                                             ec.message()));
    }
    const auto runs_path = cfg.out_dir / "runs.csv";
    const auto summary_path = cfg.out_dir / "summary.csv";
    std::ofstream runs_file(runs_path);
    std::ofstream summary_file(summary_path);
    if (!runs_file || !summary_file) {
        throw std::runtime_error("cannot write results under " + cfg.out_dir.string());
    }

    GridResult result = run_grid(cfg);
    write_runs_csv(runs_file, result.runs);
    write_summary_csv(summary_file, result.summary);
    if (!runs_file.flush() || !summary_file.flush()) {
        throw std::runtime_error("write failed under " + cfg.out_dir.string());
    }
    print_summary(console, result.summary);
    console << fmt::format("wrote {} and {}\n", runs_path.string(), summary_path.string());
    return result;
}

DatasetCheck check_dataset(const ExperimentConfig& cfg) {
    cfg.validate();
    const LabeledDataset data = experiment_dataset(cfg, 0);
    DatasetCheck check;
    check.points = data.dataset.size();
    check.k = data.truth.k();
    check.gamma = data.gamma;
    check.center_based = is_center_based(data.dataset, data.truth);

    const double gamma = data.gamma.is_infinite() ? std::numeric_limits<double>::max() : data.gamma.value();
    const double eps_cap = (gamma - 1.0) / 2.0;
    if (cfg.epsilon && (*cfg.epsilon < 0.0 || *cfg.epsilon > eps_cap)) {
        throw UsageError(fmt::format("epsilon {} exceeds (gamma - 1) / 2 = {} for realized gamma {}", *cfg.epsilon,
                                     eps_cap, data.gamma.to_string()));
    }

    for (int c = 0; c < data.truth.k(); ++c) {
        double closest = std::numeric_limits<double>::infinity();
        for (std::size_t i : data.truth.members(c)) closest = std::min(closest, data.truth.center_distance(i));
        const double r = data.truth.radius(c);
        check.min_ratios.push_back(r > 0.0 ? closest / r : 0.0);
    }

    if (eps_cap < 0.0) {
        check.note = "realized gamma below 1: the recovery conditions do not apply";
        return check;
    }
    const double epsilon = cfg.epsilon.value_or(data.gamma.is_infinite() ? 0.0 : eps_cap);
    for (const auto& o : cfg.oracles) {
        if (o == "perfect") continue;
        const WeakModel model = o == "local" ? WeakModel::Local : WeakModel::Global;
        for (double c : cfg.c_dist) {
            ConditionVerdict v;
            v.model = model;
            v.c_dist = c;
            v.params = map_cdist_params(c, mapping_gamma(data.gamma));
            v.epsilon = epsilon;
            v.report = check_theorem_condition(data.dataset, data.truth,
                                               TheoremParams{epsilon, gamma, v.params.nu, v.params.rho}, model);
            check.verdicts.push_back(std::move(v));
        }
    }
    return check;
}

void print_check(std::ostream& out, const DatasetCheck& check) {
    out << fmt::format("points: {}  clusters: {}  realized gamma: {}  center-based: {}\n", check.points, check.k,
                       check.gamma.to_string(), check.center_based ? "yes" : "no");
    for (std::size_t c = 0; c < check.min_ratios.size(); ++c) {
        out << fmt::format("  cluster {}: min d(x,mu)/r = {:.6f}\n", c, check.min_ratios[c]);
    }
    if (!check.note.empty()) {
        out << check.note << '\n';
    }
    for (const auto& v : check.verdicts) {
        out << fmt::format("{} c_dist={} nu={:.4f} rho={:.4f} epsilon={:.6f} coefficient={:.6f}: {}\n",
                           v.model == WeakModel::Local ? "local" : "global", v.c_dist, v.params.nu, v.params.rho,
                           v.epsilon, v.report.coefficient, v.report.satisfied ? "satisfied" : "not satisfied");
        for (std::size_t c = 0; c < v.report.clusters.size(); ++c) {
            out << fmt::format("  cluster {}: {}\n", c, v.report.clusters[c].covered ? "covered" : "not covered");
        }
    }
}

LabeledDataset emit_fixture(std::uint64_t seed, const std::filesystem::path& path) {
    SynthConfig sc;
    sc.n = 30;
    sc.k = 3;
    sc.dim = 2;
    sc.sigma = 1.0;
    sc.gamma_min = 1.0;
    sc.gamma_max = 100.0;
    sc.seed = seed;
    sc.max_attempts = 10000;
    LabeledDataset data = generate_synthetic(sc);
    save_embedding(path, data);
    return data;
}

}  // namespace ssac
