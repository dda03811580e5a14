#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hyqgnn/core/graph.hpp"
#include "hyqgnn/featurize/dataset_io.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::harness {

inline std::vector<core::FeaturizedGraph> load_dataset(const std::string& path) {
    return featurize::read_dataset_json(path);
}

struct SplitSizes {
    std::size_t train = 196;
    std::size_t val = 25;
    std::size_t test = 25;
};

struct DatasetSplit {
    std::vector<core::FeaturizedGraph> train;
    std::vector<core::FeaturizedGraph> val;
    std::vector<core::FeaturizedGraph> test;
};

/// Seeded shuffle followed by contiguous slicing into train/val/test.
inline DatasetSplit split_dataset(const std::vector<core::FeaturizedGraph>& data, const SplitSizes& sizes,
                                  std::uint64_t seed) {
    if (sizes.train == 0 || sizes.val == 0 || sizes.test == 0) {
        throw ConfigError("all split sizes must be positive");
    }
    const std::size_t need = sizes.train + sizes.val + sizes.test;
    if (data.size() < need) {
        throw InsufficientData("split needs " + std::to_string(need) + " records, dataset holds " +
                               std::to_string(data.size()));
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    DatasetSplit split;
    split.train.reserve(sizes.train);
    split.val.reserve(sizes.val);
    split.test.reserve(sizes.test);
    std::size_t at = 0;
    for (std::size_t k = 0; k < sizes.train; ++k) split.train.push_back(data[order[at++]]);
    for (std::size_t k = 0; k < sizes.val; ++k) split.val.push_back(data[order[at++]]);
    for (std::size_t k = 0; k < sizes.test; ++k) split.test.push_back(data[order[at++]]);
    return split;
}

}  // namespace hyqgnn::harness
