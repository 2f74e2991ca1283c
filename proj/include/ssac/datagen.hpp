#ifndef SSAC_DATAGEN_HPP
#define SSAC_DATAGEN_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "ssac/core.hpp"

namespace ssac {

struct SynthConfig {
    std::size_t n = 600;
    int k = 3;
    std::size_t dim = 2;
    double sigma = 2.0;
    double gamma_min = 1.0;
    double gamma_max = 1.1;
    std::uint64_t seed = 0;
    double center_box_scale = 6.0;  // centers uniform in [-scale*sigma, scale*sigma]^dim
    std::size_t max_attempts = 100000;

    void validate() const;
    std::string describe() const;
};

struct LabeledDataset {
    Dataset dataset;
    Clustering truth;
    ExtendedReal gamma;
    std::vector<int> source_labels;  // original label of each dense cluster id

    LabeledDataset(Dataset ds, Clustering c, ExtendedReal g, std::vector<int> source = {});
};

// Isotropic Gaussian clusters, relabelled to their nearest empirical center
// until stable, accepted when center-based with margin in
// [gamma_min, gamma_max]. Clusters of radius 0 are rejected. k == 1 has an
// unbounded margin and is accepted as is. Throws GenerationFailure once
// max_attempts draws are rejected.
LabeledDataset generate_synthetic(const SynthConfig& cfg);

// Reads "label,coord_1,...,coord_m" rows (comma or tab, detected from the
// first data row; '#' lines and blank lines ignored). Keeps rows whose label
// is in `keep` (all rows when `keep` is empty) and renumbers labels densely in
// ascending order. Margin is recorded, not enforced.
LabeledDataset parse_embedding(std::istream& in, const std::set<int>& keep);
LabeledDataset load_embedding(const std::filesystem::path& path, const std::set<int>& keep);

// Writes the embedding format with round-trip precision. Labels are the
// source labels when present, dense ids otherwise.
void write_embedding(std::ostream& out, const LabeledDataset& data);
void save_embedding(const std::filesystem::path& path, const LabeledDataset& data);

}  // namespace ssac

#endif  // SSAC_DATAGEN_HPP
