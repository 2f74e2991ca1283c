#include "ssac/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

namespace ssac {

namespace {

constexpr int kRelabelSweeps = 20;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    if (delim == ' ') {
        std::size_t pos = 0;
        while (pos < line.size()) {
            const auto start = line.find_first_not_of(" \t", pos);
            if (start == std::string_view::npos) break;
            const auto end = line.find_first_of(" \t", start);
            out.push_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
            pos = end == std::string_view::npos ? line.size() : end;
        }
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(delim, pos);
        out.push_back(trim(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return v;
}

// One Gaussian draw plus relabel-to-nearest-center sweeps. Returns the labels
// when they stabilize with every cluster nonempty.
std::optional<std::vector<int>> draw_candidate(const SynthConfig& cfg, std::mt19937_64& rng,
                                               std::vector<double>& coords) {
    const auto k = static_cast<std::size_t>(cfg.k);
    const double half = cfg.center_box_scale * cfg.sigma;
    std::uniform_real_distribution<double> box(-half, half);
    std::normal_distribution<double> noise(0.0, cfg.sigma);

    std::vector<Point> centers(k, Point(cfg.dim));
    for (auto& c : centers) {
        for (auto& v : c) v = box(rng);
    }
    coords.clear();
    coords.reserve(cfg.n * cfg.dim);
    std::vector<int> labels;
    labels.reserve(cfg.n);
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t count = cfg.n / k + (c < cfg.n % k ? 1 : 0);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t d = 0; d < cfg.dim; ++d) {
                coords.push_back(centers[c][d] + noise(rng));
            }
            labels.push_back(static_cast<int>(c));
        }
    }

    const Dataset ds(cfg.dim, coords);
    for (int sweep = 0; sweep < kRelabelSweeps; ++sweep) {
        std::vector<Point> empirical;
        try {
            empirical = compute_centers(ds, labels, cfg.k);
        } catch (const InvalidClustering&) {
            return std::nullopt;
        }
        bool changed = false;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            int best = labels[i];
            double best_d = distance(ds.point(i), empirical[static_cast<std::size_t>(best)]);
            for (int c = 0; c < cfg.k; ++c) {
                const double d = distance(ds.point(i), empirical[static_cast<std::size_t>(c)]);
                if (d < best_d) {
                    best = c;
                    best_d = d;
                }
            }
            if (best != labels[i]) {
                labels[i] = best;
                changed = true;
            }
        }
        if (!changed) {
            return labels;
        }
    }
    return std::nullopt;
}

}  // namespace

void SynthConfig::validate() const {
    if (k < 1 || n < static_cast<std::size_t>(k)) {
        throw UsageError(fmt::format("synthetic data needs n >= k >= 1 (n={}, k={})", n, k));
    }
    if (dim < 1) {
        throw UsageError("synthetic data needs dim >= 1");
    }
    if (!(sigma > 0.0)) {
        throw UsageError(fmt::format("sigma must be positive, got {}", sigma));
    }
    if (!(gamma_min <= gamma_max)) {
        throw UsageError(fmt::format("gamma_min {} exceeds gamma_max {}", gamma_min, gamma_max));
    }
    if (!(center_box_scale > 0.0)) {
        throw UsageError("center_box_scale must be positive");
    }
    if (max_attempts < 1) {
        throw UsageError("max_attempts must be at least 1");
    }
}

std::string SynthConfig::describe() const {
    return fmt::format("n={} k={} dim={} sigma={} gamma=[{}, {}] seed={} box={} attempts={}", n, k, dim, sigma,
                       gamma_min, gamma_max, seed, center_box_scale, max_attempts);
}

LabeledDataset::LabeledDataset(Dataset ds, Clustering c, ExtendedReal g, std::vector<int> source)
    : dataset(std::move(ds)), truth(std::move(c)), gamma(g), source_labels(std::move(source)) {}

LabeledDataset generate_synthetic(const SynthConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> coords;
    for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        auto labels = draw_candidate(cfg, rng, coords);
        if (!labels) {
            continue;
        }
        Dataset ds(cfg.dim, coords);
        Clustering truth = Clustering::from_labels(ds, std::move(*labels), cfg.k);
        const auto& radii = truth.radii();
        if (std::any_of(radii.begin(), radii.end(), [](double r) { return r == 0.0; })) {
            continue;
        }
        if (!is_center_based(ds, truth)) {
            continue;
        }
        const ExtendedReal gamma = realized_gamma(ds, truth);
        const bool in_range =
            gamma.is_infinite() ? cfg.k == 1 : (cfg.gamma_min <= gamma.value() && gamma.value() <= cfg.gamma_max);
        if (in_range) {
            return LabeledDataset(std::move(ds), std::move(truth), gamma);
        }
    }
    throw GenerationFailure("no dataset accepted after " + std::to_string(cfg.max_attempts) +
                            " attempts (" + cfg.describe() + ")");
}

LabeledDataset parse_embedding(std::istream& in, const std::set<int>& keep) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<char> delim;
    std::optional<std::size_t> dim;
    std::vector<double> coords;
    std::vector<int> raw_labels;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty() || row.front() == '#') {
            continue;
        }
        if (!delim) {
            delim = row.find(',') != std::string_view::npos ? ','
                  : row.find('\t') != std::string_view::npos ? '\t'
                                                              : ' ';
        }
        const auto fields = split_fields(row, *delim);
        if (fields.size() < 2) {
            throw ParseError(line_no, "expected a label and at least one coordinate");
        }
        if (!dim) {
            dim = fields.size() - 1;
        } else if (fields.size() - 1 != *dim) {
            throw ParseError(line_no, fmt::format("expected {} coordinates, found {}", *dim, fields.size() - 1));
        }
        const auto label = parse_number<int>(fields[0]);
        if (!label) {
            throw ParseError(line_no, fmt::format("label '{}' is not an integer", fields[0]));
        }
        std::vector<double> row_coords;
        row_coords.reserve(*dim);
        for (std::size_t f = 1; f < fields.size(); ++f) {
            const auto v = parse_number<double>(fields[f]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(line_no, fmt::format("coordinate '{}' is not a finite number", fields[f]));
            }
            row_coords.push_back(*v);
        }
        if (!keep.empty() && !keep.contains(*label)) {
            continue;
        }
        raw_labels.push_back(*label);
        coords.insert(coords.end(), row_coords.begin(), row_coords.end());
    }

    if (raw_labels.empty()) {
        throw UsageError("embedding selection is empty");
    }
    std::map<int, int> dense;
    for (int l : raw_labels) dense.emplace(l, 0);
    std::vector<int> source;
    for (auto& [raw, id] : dense) {
        id = static_cast<int>(source.size());
        source.push_back(raw);
    }
    std::vector<int> labels;
    labels.reserve(raw_labels.size());
    for (int l : raw_labels) labels.push_back(dense.at(l));

    Dataset ds(*dim, std::move(coords));
    Clustering truth = Clustering::from_labels(ds, std::move(labels), static_cast<int>(source.size()));
    const ExtendedReal gamma = realized_gamma(ds, truth);
    return LabeledDataset(std::move(ds), std::move(truth), gamma, std::move(source));
}

LabeledDataset load_embedding(const std::filesystem::path& path, const std::set<int>& keep) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open embedding file " + path.string());
    }
    return parse_embedding(in, keep);
}

void write_embedding(std::ostream& out, const LabeledDataset& data) {
    const Dataset& ds = data.dataset;
    out << "# label";
    for (std::size_t d = 0; d < ds.dim(); ++d) out << ",x" << d;
    out << '\n';
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const int id = data.truth.label(i);
        const int label = data.source_labels.empty() ? id : data.source_labels[static_cast<std::size_t>(id)];
        out << label;
        for (double v : ds.point(i)) out << ',' << fmt::format("{}", v);
        out << '\n';
    }
}

void save_embedding(const std::filesystem::path& path, const LabeledDataset& data) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write_embedding(out, data);
    if (!out.flush()) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

}  // namespace ssac
