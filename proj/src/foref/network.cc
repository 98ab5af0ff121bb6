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

#include "slsearch/foref/network.h"

#include <cmath>
#include <stdexcept>

#include "slsearch/foref/render.h"

namespace slsearch::foref {

namespace {

constexpr int kConv1Out = kImageSize - kConv1Kernel + 1;  // 24
constexpr int kPool1Out = kConv1Out / 2;                  // 12
constexpr int kConv2Out = kPool1Out - kConv2Kernel + 1;   // 10
constexpr int kPool2Out = kConv2Out / 2;                  // 5
constexpr int kConv1Patch = kConv1Kernel * kConv1Kernel;
constexpr int kConv2Patch = kConv1Filters * kConv2Kernel * kConv2Kernel;

static_assert(kPool2Out * kPool2Out * kConv2Filters == kFeatureSize);

std::array<TensorInfo, 10> BuildLayout() {
  std::array<std::pair<std::string_view, std::array<uint32_t, 4>>, 10> shapes =
      {{
          {"conv1.weight", {kConv1Filters, 1, kConv1Kernel, kConv1Kernel}},
          {"conv1.bias", {kConv1Filters, 1, 1, 1}},
          {"conv2.weight",
           {kConv2Filters, kConv1Filters, kConv2Kernel, kConv2Kernel}},
          {"conv2.bias", {kConv2Filters, 1, 1, 1}},
          {"fc1.weight", {kHidden1, kFeatureSize, 1, 1}},
          {"fc1.bias", {kHidden1, 1, 1, 1}},
          {"fc2.weight", {kHidden2, kHidden1, 1, 1}},
          {"fc2.bias", {kHidden2, 1, 1, 1}},
          {"fc3.weight", {1, kHidden2, 1, 1}},
          {"fc3.bias", {1, 1, 1, 1}},
      }};
  std::array<TensorInfo, 10> layout;
  size_t offset = 0;
  for (size_t i = 0; i < shapes.size(); ++i) {
    const auto &s = shapes[i].second;
    const size_t size = size_t{s[0]} * s[1] * s[2] * s[3];
    layout[i] = {shapes[i].first, s, offset, size};
    offset += size;
  }
  return layout;
}

enum Tensor { kW1, kB1, kW2, kB2, kW3, kB3, kW4, kB4, kW5, kB5 };

}  // namespace

const std::array<TensorInfo, 10> &ParameterLayout() {
  static const std::array<TensorInfo, 10> layout = BuildLayout();
  return layout;
}

size_t ParameterCount() {
  const auto &last = ParameterLayout().back();
  return last.offset + last.size;
}

template <typename Real>
ConvNet<Real>::ConvNet() : params_(ParameterCount(), Real(0)) {}

template <typename Real>
void ConvNet<Real>::Initialize(std::mt19937_64 &rng) {
  for (const TensorInfo &t : ParameterLayout()) {
    const bool is_bias = t.shape[1] == 1 && t.shape[2] == 1 &&
                         t.shape[3] == 1 && t.name.ends_with("bias");
    Real *p = params_.data() + t.offset;
    if (is_bias) {
      std::fill(p, p + t.size, Real(0));
      continue;
    }
    const double receptive = double(t.shape[2]) * t.shape[3];
    const double fan_in = t.shape[1] * receptive;
    const double fan_out = t.shape[0] * receptive;
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (size_t i = 0; i < t.size; ++i) p[i] = static_cast<Real>(dist(rng));
  }
}

template <typename Real>
std::vector<Real> ConvNet<Real>::Forward(std::span<const Real> images,
                                         int batch) const {
  Workspace ws;
  return Forward(images, batch, ws);
}

template <typename Real>
std::vector<Real> ConvNet<Real>::Forward(std::span<const Real> images,
                                         int batch, Workspace &ws) const {
  if (batch <= 0 ||
      images.size() != static_cast<size_t>(batch) * kImagePixels) {
    throw std::invalid_argument("expected " + std::to_string(batch) +
                                " images of 28x28 pixels");
  }
  using ConstMap = Eigen::Map<const Matrix>;
  using RowVec = Eigen::Map<const Eigen::Matrix<Real, 1, Eigen::Dynamic>>;
  const auto &layout = ParameterLayout();
  const Real *p = params_.data();
  auto weights = [&](Tensor t, int rows, int cols) {
    return ConstMap(p + layout[t].offset, rows, cols);
  };
  auto bias = [&](Tensor t) {
    return RowVec(p + layout[t].offset, layout[t].size);
  };

  ws.batch = batch;
  const int b_count = batch;

  // conv1 via im2col.
  constexpr int pos1 = kConv1Out * kConv1Out;
  ws.cols1.resize(b_count * pos1, kConv1Patch);
  for (int b = 0; b < b_count; ++b) {
    const Real *img = images.data() + b * kImagePixels;
    for (int oy = 0; oy < kConv1Out; ++oy) {
      for (int ox = 0; ox < kConv1Out; ++ox) {
        Real *row = ws.cols1.row(b * pos1 + oy * kConv1Out + ox).data();
        for (int ky = 0; ky < kConv1Kernel; ++ky) {
          const Real *src = img + (oy + ky) * kImageSize + ox;
          for (int kx = 0; kx < kConv1Kernel; ++kx) {
            row[ky * kConv1Kernel + kx] = src[kx];
          }
        }
      }
    }
  }
  ws.z1.noalias() =
      ws.cols1 * weights(kW1, kConv1Filters, kConv1Patch).transpose();
  ws.z1.rowwise() += bias(kB1);
  ws.z1 = ws.z1.cwiseMax(Real(0));

  // pool1.
  constexpr int pos_p1 = kPool1Out * kPool1Out;
  ws.pooled1.resize(b_count * pos_p1, kConv1Filters);
  ws.argmax1.assign(static_cast<size_t>(b_count) * pos_p1 * kConv1Filters, 0);
  for (int b = 0; b < b_count; ++b) {
    for (int py = 0; py < kPool1Out; ++py) {
      for (int px = 0; px < kPool1Out; ++px) {
        const int out = b * pos_p1 + py * kPool1Out + px;
        int *arg = ws.argmax1.data() + out * kConv1Filters;
        Real *dst = ws.pooled1.row(out).data();
        for (int d = 0; d < 4; ++d) {
          const int src_row =
              b * pos1 + (2 * py + d / 2) * kConv1Out + 2 * px + d % 2;
          const Real *src = ws.z1.row(src_row).data();
          for (int c = 0; c < kConv1Filters; ++c) {
            if (d == 0 || src[c] > dst[c]) {
              dst[c] = src[c];
              arg[c] = src_row;
            }
          }
        }
      }
    }
  }

  // conv2 via im2col; column order matches (in, ky, kx).
  constexpr int pos2 = kConv2Out * kConv2Out;
  ws.cols2.resize(b_count * pos2, kConv2Patch);
  for (int b = 0; b < b_count; ++b) {
    for (int oy = 0; oy < kConv2Out; ++oy) {
      for (int ox = 0; ox < kConv2Out; ++ox) {
        Real *row = ws.cols2.row(b * pos2 + oy * kConv2Out + ox).data();
        for (int ky = 0; ky < kConv2Kernel; ++ky) {
          for (int kx = 0; kx < kConv2Kernel; ++kx) {
            const Real *src =
                ws.pooled1.row(b * pos_p1 + (oy + ky) * kPool1Out + ox + kx)
                    .data();
            for (int c = 0; c < kConv1Filters; ++c) {
              row[c * kConv2Kernel * kConv2Kernel + ky * kConv2Kernel + kx] =
                  src[c];
            }
          }
        }
      }
    }
  }
  ws.z2.noalias() =
      ws.cols2 * weights(kW2, kConv2Filters, kConv2Patch).transpose();
  ws.z2.rowwise() += bias(kB2);
  ws.z2 = ws.z2.cwiseMax(Real(0));

  // pool2 straight into the flattened feature vector (position-major).
  constexpr int pos_p2 = kPool2Out * kPool2Out;
  ws.features.resize(b_count, kFeatureSize);
  ws.argmax2.assign(static_cast<size_t>(b_count) * kFeatureSize, 0);
  for (int b = 0; b < b_count; ++b) {
    Real *feat = ws.features.row(b).data();
    for (int py = 0; py < kPool2Out; ++py) {
      for (int px = 0; px < kPool2Out; ++px) {
        const int pos = py * kPool2Out + px;
        Real *dst = feat + pos * kConv2Filters;
        int *arg = ws.argmax2.data() + (b * pos_p2 + pos) * kConv2Filters;
        for (int d = 0; d < 4; ++d) {
          const int src_row =
              b * pos2 + (2 * py + d / 2) * kConv2Out + 2 * px + d % 2;
          const Real *src = ws.z2.row(src_row).data();
          for (int c = 0; c < kConv2Filters; ++c) {
            if (d == 0 || src[c] > dst[c]) {
              dst[c] = src[c];
              arg[c] = src_row;
            }
          }
        }
      }
    }
  }

  ws.h1.noalias() =
      ws.features * weights(kW3, kHidden1, kFeatureSize).transpose();
  ws.h1.rowwise() += bias(kB3);
  ws.h1 = ws.h1.cwiseMax(Real(0));
  ws.h2.noalias() = ws.h1 * weights(kW4, kHidden2, kHidden1).transpose();
  ws.h2.rowwise() += bias(kB4);
  ws.h2 = ws.h2.cwiseMax(Real(0));

  Matrix out = ws.h2 * weights(kW5, 1, kHidden2).transpose();
  const Real b5 = p[layout[kB5].offset];
  std::vector<Real> result(b_count);
  for (int b = 0; b < b_count; ++b) result[b] = out(b, 0) + b5;
  return result;
}

template <typename Real>
void ConvNet<Real>::Backward(const Workspace &ws,
                             std::span<const Real> output_grad,
                             std::vector<Real> &grad) const {
  const int b_count = ws.batch;
  if (output_grad.size() != static_cast<size_t>(b_count)) {
    throw std::invalid_argument("output gradient size does not match batch");
  }
  using ConstMap = Eigen::Map<const Matrix>;
  using MutMap = Eigen::Map<Matrix>;
  const auto &layout = ParameterLayout();
  grad.assign(ParameterCount(), Real(0));
  const Real *p = params_.data();
  auto weights = [&](Tensor t, int rows, int cols) {
    return ConstMap(p + layout[t].offset, rows, cols);
  };
  auto grad_weights = [&](Tensor t, int rows, int cols) {
    return MutMap(grad.data() + layout[t].offset, rows, cols);
  };
  auto grad_bias = [&](Tensor t) {
    return MutMap(grad.data() + layout[t].offset, 1, layout[t].size);
  };
  auto relu_mask = [](const Matrix &activation) {
    return (activation.array() > Real(0)).template cast<Real>();
  };

  const ConstMap dout(output_grad.data(), b_count, 1);
  grad_weights(kW5, 1, kHidden2).noalias() = dout.transpose() * ws.h2;
  grad_bias(kB5) = dout.colwise().sum();

  Matrix dh2 = dout * weights(kW5, 1, kHidden2);
  dh2.array() *= relu_mask(ws.h2);
  grad_weights(kW4, kHidden2, kHidden1).noalias() = dh2.transpose() * ws.h1;
  grad_bias(kB4) = dh2.colwise().sum();

  Matrix dh1 = dh2 * weights(kW4, kHidden2, kHidden1);
  dh1.array() *= relu_mask(ws.h1);
  grad_weights(kW3, kHidden1, kFeatureSize).noalias() =
      dh1.transpose() * ws.features;
  grad_bias(kB3) = dh1.colwise().sum();

  const Matrix dfeat = dh1 * weights(kW3, kHidden1, kFeatureSize);

  constexpr int pos2 = kConv2Out * kConv2Out;
  constexpr int pos_p2 = kPool2Out * kPool2Out;
  Matrix dz2 = Matrix::Zero(b_count * pos2, kConv2Filters);
  for (int b = 0; b < b_count; ++b) {
    for (int pos = 0; pos < pos_p2; ++pos) {
      const int *arg = ws.argmax2.data() + (b * pos_p2 + pos) * kConv2Filters;
      for (int c = 0; c < kConv2Filters; ++c) {
        dz2(arg[c], c) += dfeat(b, pos * kConv2Filters + c);
      }
    }
  }
  dz2.array() *= relu_mask(ws.z2);
  grad_weights(kW2, kConv2Filters, kConv2Patch).noalias() =
      dz2.transpose() * ws.cols2;
  grad_bias(kB2) = dz2.colwise().sum();

  const Matrix dcols2 = dz2 * weights(kW2, kConv2Filters, kConv2Patch);
  constexpr int pos_p1 = kPool1Out * kPool1Out;
  Matrix dpooled1 = Matrix::Zero(b_count * pos_p1, kConv1Filters);
  for (int b = 0; b < b_count; ++b) {
    for (int oy = 0; oy < kConv2Out; ++oy) {
      for (int ox = 0; ox < kConv2Out; ++ox) {
        const Real *row = dcols2.row(b * pos2 + oy * kConv2Out + ox).data();
        for (int ky = 0; ky < kConv2Kernel; ++ky) {
          for (int kx = 0; kx < kConv2Kernel; ++kx) {
            Real *dst =
                dpooled1.row(b * pos_p1 + (oy + ky) * kPool1Out + ox + kx)
                    .data();
            for (int c = 0; c < kConv1Filters; ++c) {
              dst[c] +=
                  row[c * kConv2Kernel * kConv2Kernel + ky * kConv2Kernel + kx];
            }
          }
        }
      }
    }
  }

  constexpr int pos1 = kConv1Out * kConv1Out;
  Matrix dz1 = Matrix::Zero(b_count * pos1, kConv1Filters);
  for (int r = 0; r < b_count * pos_p1; ++r) {
    const int *arg = ws.argmax1.data() + r * kConv1Filters;
    for (int c = 0; c < kConv1Filters; ++c) {
      dz1(arg[c], c) += dpooled1(r, c);
    }
  }
  dz1.array() *= relu_mask(ws.z1);
  grad_weights(kW1, kConv1Filters, kConv1Patch).noalias() =
      dz1.transpose() * ws.cols1;
  grad_bias(kB1) = dz1.colwise().sum();
}

template class ConvNet<float>;
template class ConvNet<double>;

Adam::Adam(size_t size, double learning_rate, double beta1, double beta2,
           double epsilon)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      m_(size, 0.0),
      v_(size, 0.0) {}

void Adam::Step(std::vector<float> &params, const std::vector<float> &grad) {
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    params[i] -= static_cast<float>(lr_ * m_hat / (std::sqrt(v_hat) + eps_));
  }
}

}  // namespace slsearch::foref
