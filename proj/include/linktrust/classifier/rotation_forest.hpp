//
// Copyright 2026 The LinkTrust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "linktrust/classifier/common.hpp"
#include "linktrust/classifier/decision_tree.hpp"

namespace linktrust {

// Jacobi eigendecomposition of a small symmetric matrix (row-major k x k).
// Eigenpairs come back sorted by descending eigenvalue with a deterministic
// sign convention; eigenvectors_ is column-major (column c = eigenvector c).
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;
};

inline EigenDecomposition jacobi_eigen_symmetric(std::size_t k,
                                                 std::vector<double> a) {
  std::vector<double> v(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) v[i * k + i] = 1.0;

  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        off += a[p * k + q] * a[p * k + q];
      }
    }
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = a[p * k + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * k + q] - a[p * k + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < k; ++i) {
          const double aip = a[i * k + p];
          const double aiq = a[i * k + q];
          a[i * k + p] = c * aip - s * aiq;
          a[i * k + q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < k; ++i) {
          const double api = a[p * k + i];
          const double aqi = a[q * k + i];
          a[p * k + i] = c * api - s * aqi;
          a[q * k + i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < k; ++i) {
          const double vip = v[i * k + p];
          const double viq = v[i * k + q];
          v[i * k + p] = c * vip - s * viq;
          v[i * k + q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (a[x * k + x] != a[y * k + y]) return a[x * k + x] > a[y * k + y];
    return x < y;
  });

  EigenDecomposition result;
  result.eigenvalues.resize(k);
  result.eigenvectors.resize(k * k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = order[c];
    result.eigenvalues[c] = a[src * k + src];
    std::size_t peak = 0;
    for (std::size_t r = 1; r < k; ++r) {
      if (std::abs(v[r * k + src]) > std::abs(v[peak * k + src])) peak = r;
    }
    const double sign = v[peak * k + src] < 0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < k; ++r) {
      result.eigenvectors[c * k + r] = sign * v[r * k + src];
    }
  }
  return result;
}

// One block of a rotation: the feature subset it covers, the centering used
// for the principal-component projection, and the orthonormal basis
// (column-major, column c = component c).
struct RotationBlock {
  std::vector<std::int32_t> features;
  std::vector<double> center;
  std::vector<double> basis;
};

struct Rotation {
  std::vector<RotationBlock> blocks;
};

struct RotationForestOptions {
  int min_leaf = 6;
  int iterations = 100;
  std::uint64_t seed = 0;
  int subset_size = 3;
};

// Rotation forest: per iteration, partition the features into random subsets,
// compute principal components of each subset on a 75% class-stratified
// bootstrap sample (all components kept), rotate the full training set with
// the resulting block-diagonal orthonormal matrix and grow a tree on it.
class RotationForestClassifier final : public ClassifierImpl {
 public:
  static RotationForestClassifier fit(const TrainingData& data,
                                      const RotationForestOptions& options,
                                      int threads = 1) {
    if (data.rows == 0) {
      throw Error(Errc::EmptyTrainingSet, "no training instances");
    }
    RotationForestClassifier model;
    model.rotations_.resize(options.iterations);
    model.trees_.resize(options.iterations);

    std::vector<std::size_t> class_members[2];
    for (std::size_t i = 0; i < data.rows; ++i) {
      class_members[data.labels[i]].push_back(i);
    }

    parallel_for(options.iterations, threads, [&](std::size_t iteration) {
      SplitMix64 rng(derive_seed(options.seed, iteration));
      std::vector<std::int32_t> permutation(data.cols);
      for (std::size_t c = 0; c < data.cols; ++c) {
        permutation[c] = static_cast<std::int32_t>(c);
      }
      fisher_yates_shuffle(permutation, rng);

      Rotation rotation;
      const std::size_t subset =
          std::max<std::size_t>(1, static_cast<std::size_t>(options.subset_size));
      for (std::size_t start = 0; start < data.cols; start += subset) {
        RotationBlock block;
        const std::size_t end = std::min(start + subset, data.cols);
        block.features.assign(permutation.begin() + start,
                              permutation.begin() + end);
        fit_block(data, class_members, block, rng);
        rotation.blocks.push_back(std::move(block));
      }

      TrainingData rotated;
      rotated.rows = data.rows;
      rotated.cols = data.cols;
      rotated.labels = data.labels;
      rotated.values.resize(data.rows * data.cols);
      std::vector<double> out(data.cols);
      for (std::size_t r = 0; r < data.rows; ++r) {
        apply_rotation(rotation, data.row(r), out);
        std::copy(out.begin(), out.end(),
                  rotated.values.begin() + r * data.cols);
      }

      TreeOptions tree_options;
      tree_options.min_leaf = options.min_leaf;
      model.trees_[iteration] =
          DecisionTreeClassifier::fit(rotated, tree_options);
      model.rotations_[iteration] = std::move(rotation);
    });
    return model;
  }

  static void apply_rotation(const Rotation& rotation,
                             std::span<const double> row,
                             std::vector<double>& out) {
    std::size_t position = 0;
    for (const RotationBlock& block : rotation.blocks) {
      const std::size_t k = block.features.size();
      for (std::size_t component = 0; component < k; ++component) {
        double value = 0.0;
        for (std::size_t d = 0; d < k; ++d) {
          value += (row[block.features[d]] - block.center[d]) *
                   block.basis[component * k + d];
        }
        out[position++] = value;
      }
    }
  }

  double predict(std::span<const double> row) const override {
    std::vector<double> rotated(row.size());
    double sum = 0.0;
    for (std::size_t t = 0; t < trees_.size(); ++t) {
      apply_rotation(rotations_[t], row, rotated);
      sum += trees_[t].predict(rotated);
    }
    return sum / static_cast<double>(trees_.size());
  }

  const std::vector<Rotation>& rotations() const { return rotations_; }
  const std::vector<DecisionTreeClassifier>& trees() const { return trees_; }

  const char* kind() const override { return "rotation_forest"; }

  void fitted_to_json(OrderedJson& out) const override {
    out["kind"] = kind();
    OrderedJson iterations = OrderedJson::array();
    for (std::size_t t = 0; t < trees_.size(); ++t) {
      OrderedJson entry;
      OrderedJson blocks = OrderedJson::array();
      for (const RotationBlock& block : rotations_[t].blocks) {
        blocks.push_back({{"features", block.features},
                          {"center", block.center},
                          {"basis", block.basis}});
      }
      entry["blocks"] = std::move(blocks);
      OrderedJson tree;
      trees_[t].fitted_to_json(tree);
      entry["tree"] = std::move(tree);
      iterations.push_back(std::move(entry));
    }
    out["iterations"] = std::move(iterations);
  }

  static std::shared_ptr<ClassifierImpl> from_json(const OrderedJson& in) {
    auto model = std::make_shared<RotationForestClassifier>();
    for (const auto& entry : in.at("iterations")) {
      Rotation rotation;
      for (const auto& b : entry.at("blocks")) {
        RotationBlock block;
        block.features = b.at("features").get<std::vector<std::int32_t>>();
        block.center = b.at("center").get<std::vector<double>>();
        block.basis = b.at("basis").get<std::vector<double>>();
        if (block.center.size() != block.features.size() ||
            block.basis.size() !=
                block.features.size() * block.features.size()) {
          throw Error(Errc::InvalidArgument, "inconsistent rotation block");
        }
        rotation.blocks.push_back(std::move(block));
      }
      model->rotations_.push_back(std::move(rotation));
      model->trees_.push_back(
          DecisionTreeClassifier::tree_from_json(entry.at("tree")));
    }
    if (model->trees_.empty()) {
      throw Error(Errc::InvalidArgument, "rotation forest without trees");
    }
    return model;
  }

 private:
  static void fit_block(const TrainingData& data,
                        const std::vector<std::size_t> (&class_members)[2],
                        RotationBlock& block, SplitMix64& rng) {
    const std::size_t k = block.features.size();

    std::vector<std::size_t> sample;
    for (int c = 0; c < 2; ++c) {
      const std::vector<std::size_t>& members = class_members[c];
      if (members.empty()) continue;
      const std::size_t m = (members.size() * 3 + 3) / 4;  // ceil(0.75 n)
      for (std::size_t j = 0; j < m; ++j) {
        sample.push_back(
            members[static_cast<std::size_t>(rng.next_below(members.size()))]);
      }
    }

    block.center.assign(k, 0.0);
    for (std::size_t i : sample) {
      for (std::size_t d = 0; d < k; ++d) {
        block.center[d] += data.at(i, block.features[d]);
      }
    }
    const double m = static_cast<double>(sample.size());
    for (double& c : block.center) c /= std::max(m, 1.0);

    std::vector<double> covariance(k * k, 0.0);
    if (sample.size() >= 2) {
      std::vector<double> centered(k);
      for (std::size_t i : sample) {
        for (std::size_t d = 0; d < k; ++d) {
          centered[d] = data.at(i, block.features[d]) - block.center[d];
        }
        for (std::size_t p = 0; p < k; ++p) {
          for (std::size_t q = p; q < k; ++q) {
            covariance[p * k + q] += centered[p] * centered[q];
          }
        }
      }
      for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = p; q < k; ++q) {
          covariance[p * k + q] /= m - 1.0;
          covariance[q * k + p] = covariance[p * k + q];
        }
      }
    }

    block.basis = jacobi_eigen_symmetric(k, std::move(covariance)).eigenvectors;
  }

  std::vector<Rotation> rotations_;
  std::vector<DecisionTreeClassifier> trees_;
};

}  // namespace linktrust
