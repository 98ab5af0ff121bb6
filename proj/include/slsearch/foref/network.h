// Copyright 2026 The slsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Convolutional angle regressor.
//
//   28x28x1 -> conv 5x5 (16) -> ReLU -> maxpool 2 -> 12x12x16
//           -> conv 3x3 (32) -> ReLU -> maxpool 2 -> 5x5x32 = 800
//           -> fc 128 -> ReLU -> fc 32 -> ReLU -> fc 1
//
// All parameters live in one flat buffer in declaration order (conv1 weights,
// conv1 bias, conv2 weights, ..., fc3 bias), which is also the order of the
// weights file and of the gradient buffer.

#ifndef SLSEARCH_FOREF_NETWORK_H_
#define SLSEARCH_FOREF_NETWORK_H_

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace slsearch::foref {

struct TensorInfo {
  std::string_view name;
  // (out, in, kernel_h, kernel_w); fully connected layers use 1x1 kernels
  // and bias tensors use (out, 1, 1, 1).
  std::array<uint32_t, 4> shape;
  size_t offset;
  size_t size;
};

inline constexpr int kConv1Filters = 16;
inline constexpr int kConv1Kernel = 5;
inline constexpr int kConv2Filters = 32;
inline constexpr int kConv2Kernel = 3;
inline constexpr int kFeatureSize = 800;
inline constexpr int kHidden1 = 128;
inline constexpr int kHidden2 = 32;

// The ten parameter tensors in declaration order.
const std::array<TensorInfo, 10> &ParameterLayout();
size_t ParameterCount();

template <typename Real>
class ConvNet {
 public:
  using Matrix =
      Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  // Intermediate activations kept for the backward pass.
  struct Workspace {
    int batch = 0;
    Matrix cols1, z1, pooled1;
    Matrix cols2, z2, features;
    Matrix h1, h2;
    std::vector<int> argmax1, argmax2;
  };

  ConvNet();

  // Uniform in +-sqrt(6 / (fan_in + fan_out)); biases zero.
  void Initialize(std::mt19937_64 &rng);

  std::vector<Real> &params() { return params_; }
  const std::vector<Real> &params() const { return params_; }

  // images holds batch * 784 pixels. Returns one raw (unwrapped) angle per
  // image.
  std::vector<Real> Forward(std::span<const Real> images, int batch,
                            Workspace &ws) const;
  std::vector<Real> Forward(std::span<const Real> images, int batch) const;

  // Writes dLoss/dParams into grad (resized to ParameterCount()) given
  // dLoss/dOutput for the batch last passed to Forward with ws.
  void Backward(const Workspace &ws, std::span<const Real> output_grad,
                std::vector<Real> &grad) const;

 private:
  std::vector<Real> params_;
};

extern template class ConvNet<float>;
extern template class ConvNet<double>;

// Adaptive-moment optimizer state over a flat parameter buffer.
class Adam {
 public:
  Adam(size_t size, double learning_rate, double beta1, double beta2,
       double epsilon);

  void Step(std::vector<float> &params, const std::vector<float> &grad);
  int64_t steps() const { return steps_; }

  const std::vector<double> &first_moment() const { return m_; }
  const std::vector<double> &second_moment() const { return v_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  int64_t steps_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace slsearch::foref

#endif  // SLSEARCH_FOREF_NETWORK_H_
