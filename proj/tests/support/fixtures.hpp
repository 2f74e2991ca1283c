#ifndef SSAC_TESTS_FIXTURES_HPP
#define SSAC_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "ssac/core.hpp"
#include "ssac/datagen.hpp"

namespace ssac::fixture {

// 1-D points {0, 2 | 6, 8}: centers 1 and 7, both radii 1.
inline Dataset line() { return Dataset(1, {0.0, 2.0, 6.0, 8.0}); }
inline std::vector<int> line_labels() { return {0, 0, 1, 1}; }

// Small synthetic dataset with the default margin range.
inline LabeledDataset synthetic(std::uint64_t seed, std::size_t n = 120, int k = 3) {
    SynthConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.seed = seed;
    return generate_synthetic(cfg);
}

}  // namespace ssac::fixture

#endif  // SSAC_TESTS_FIXTURES_HPP
