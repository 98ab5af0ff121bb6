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

// Brute-force reference implementations shared by the unit tests and the
// acceptance checks.

#ifndef SLSEARCH_TESTS_ORACLES_H_
#define SLSEARCH_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "slsearch/angles.h"
#include "slsearch/foref/loss.h"
#include "slsearch/foref/network.h"
#include "slsearch/foref/render.h"
#include "slsearch/gridmap.h"
#include "slsearch/mos_pomdp.h"

namespace slsearch::oracle {

// Independent cell-by-cell reimplementation of the observation model.
struct Tuple {
  std::vector<Cell> ground;
  double sigma;
  bool directional;
  double vx, vy;  // relation direction
};

inline double Weight(const Tuple &t, int x, int y, bool rectified) {
  double best = std::numeric_limits<double>::infinity();
  int bx = 0, by = 0;
  for (const Cell &g : t.ground) {
    const double d2 = double(g.x - x) * (g.x - x) + double(g.y - y) * (g.y - y);
    if (d2 < best || (d2 == best && (g.x < bx || (g.x == bx && g.y < by)))) {
      best = d2;
      bx = g.x;
      by = g.y;
    }
  }
  const double gauss = std::exp(-best / (2 * t.sigma * t.sigma));
  if (!t.directional || best == 0.0) return gauss;
  double ux, uy;
  if (rectified) {
    double cx = 0, cy = 0;
    for (const Cell &g : t.ground) {
      cx += g.x;
      cy += g.y;
    }
    cx /= t.ground.size();
    cy /= t.ground.size();
    ux = x - cx;
    uy = y - cy;
  } else {
    ux = bx - x;
    uy = by - y;
  }
  const double n = std::hypot(ux, uy);
  if (n < 1e-9) return gauss;
  const double dot = (ux * t.vx + uy * t.vy) / n;
  return gauss * (rectified ? std::max(0.0, dot) : std::abs(dot));
}

inline std::vector<double> LanguageField(const std::vector<Tuple> &tuples,
                                         int w, int h, bool rectified,
                                         double lambda) {
  std::vector<double> raw(w * h, 1.0);
  double sum = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (const Tuple &t : tuples) {
        raw[y * w + x] *= Weight(t, x, y, rectified);
      }
      sum += raw[y * w + x];
    }
  }
  std::vector<double> out(w * h, 1.0 / (w * h));
  if (sum < 1e-12) return out;
  for (int i = 0; i < w * h; ++i) {
    out[i] = lambda * raw[i] / sum + (1 - lambda) / (w * h);
  }
  return out;
}

// Independent cell-by-cell Bayes filter with its own sensor geometry.
struct BayesFilter {
  int w, h, depth;
  double eps;

  bool InFan(const RobotPose &pose, const Cell &c) const {
    const double dx = c.x - pose.x;
    const double dy = c.y - pose.y;
    if (dx == 0 && dy == 0) return false;
    if (std::hypot(dx, dy) > depth) return false;
    double off = std::atan2(dy, dx) - pose.heading * kPi / 4;
    off = std::remainder(off, kTwoPi);
    return std::abs(off) <= kPi / 8 + 1e-9;
  }

  RobotPose Move(RobotPose p, Action::Kind kind) const {
    if (kind == Action::Kind::kRotateLeft) p.heading = (p.heading + 1) % 8;
    if (kind == Action::Kind::kRotateRight) p.heading = (p.heading + 7) % 8;
    if (kind != Action::Kind::kForward) return p;
    const double a = p.heading * kPi / 4;
    const int x0 = p.x, y0 = p.y;
    for (int k = 1; k <= 3; ++k) {
      const int x = x0 + static_cast<int>(std::lround(k * std::cos(a)));
      const int y = y0 + static_cast<int>(std::lround(k * std::sin(a)));
      if (x < 0 || y < 0 || x >= w || y >= h) break;
      p.x = x;
      p.y = y;
    }
    return p;
  }

  std::vector<double> Update(std::vector<double> b, const RobotPose &pose,
                             int detection) const {
    double total = 0.0;
    for (int i = 0; i < w * h; ++i) {
      const Cell c{i % w, i / w};
      double like;
      if (detection >= 0) {
        like = i == detection ? 1.0 - eps : 0.0;
      } else {
        like = InFan(pose, c) ? eps : 1.0;
      }
      b[i] *= like;
      total += b[i];
    }
    if (total < 1e-12) return std::vector<double>(w * h, 1.0 / (w * h));
    for (double &v : b) v /= total;
    return b;
  }
};

// Exact finite-horizon expectimax over beliefs for one target and a
// noiseless sensor.
inline double Expectimax(const Belief &belief, const MosModel &model,
                         int horizon, double discount,
                         std::vector<double> *per_action = nullptr) {
  if (horizon == 0 || model.AllFound(belief.found)) return 0.0;
  const GridMap &map = model.map();
  double best = -1e18;
  for (const Action &a : model.actions()) {
    double value;
    const RobotPose next_pose = model.Move(belief.robot, a);
    if (a.kind == Action::Kind::kDetect) {
      double in_fan = 0.0;
      for (const Cell &c : model.CellsInFov(belief.robot)) {
        in_fan += belief.targets[0].at(c);
      }
      value = 2000 * in_fan - 1000;
      if (in_fan > 0) {
        Belief found = belief;
        found.found = 1;
        value +=
            discount * in_fan * Expectimax(found, model, horizon - 1, discount);
      }
      if (in_fan < 1) {
        Belief missed = belief;
        for (const Cell &c : model.CellsInFov(belief.robot)) {
          missed.targets[0].at(c) = 0.0;
        }
        if (missed.targets[0].Normalize()) {
          value += discount * (1 - in_fan) *
                   Expectimax(missed, model, horizon - 1, discount);
        }
      }
    } else {
      value = -10;
      double none = 1.0;
      for (const Cell &c : model.CellsInFov(next_pose)) {
        const double p = belief.targets[0].at(c);
        if (p <= 0) continue;
        none -= p;
        const Belief next = BeliefUpdate(
            belief, a, SensorObservation{{map.Index(c)}, belief.found}, model);
        value += discount * p * Expectimax(next, model, horizon - 1, discount);
      }
      if (none > 1e-12) {
        const Belief next = BeliefUpdate(
            belief, a, SensorObservation{{kNotDetected}, belief.found}, model);
        value +=
            discount * none * Expectimax(next, model, horizon - 1, discount);
      }
    }
    if (per_action != nullptr) per_action->push_back(value);
    best = std::max(best, value);
  }
  return best;
}

struct TensorGradientError {
  std::string name;
  int checked = 0;
  // sqrt(sum (fd - bp)^2 / sum max(fd^2, bp^2)) over the checked entries.
  double relative_error = 0.0;
};

struct GradientReport {
  std::vector<TensorGradientError> tensors;
  // |fd - bp| / max(|fd|, |bp|, 1e-6) for parameters drawn from the whole
  // network.
  std::vector<double> parameters;
};

// Backprop of the angular loss against central differences with step h, in
// double precision, on a fixed random batch. Entries whose perturbation flips
// a ReLU or a max-pool choice are redrawn.
inline GradientReport CheckGradients(uint64_t seed, int per_tensor,
                                     int random_parameters, double h = 1e-4) {
  using foref::ConvNet;
  std::mt19937_64 rng(seed);
  ConvNet<double> net;
  net.Initialize(rng);
  for (const foref::TensorInfo &t : foref::ParameterLayout()) {
    if (std::string(t.name).ends_with("bias")) {
      for (size_t k = 0; k < t.size; ++k) net.params()[t.offset + k] = 0.01;
    }
  }
  const int batch = 4;
  std::vector<double> images(batch * foref::kImagePixels);
  std::uniform_real_distribution<double> px(0.0, 1.0);
  for (double &p : images) p = px(rng);
  std::vector<double> labels(batch);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (double &l : labels) l = angle(rng);

  typename ConvNet<double>::Workspace ws;
  const auto out = net.Forward(images, batch, ws);
  std::vector<double> grad;
  net.Backward(ws, foref::AngularLossWithGradient(out, labels).gradient, grad);

  ConvNet<double> probe = net;
  using Workspace = typename ConvNet<double>::Workspace;
  auto pattern = [](const Workspace &w) {
    std::vector<int> p(w.argmax1.begin(), w.argmax1.end());
    p.insert(p.end(), w.argmax2.begin(), w.argmax2.end());
    for (const auto *m : {&w.z1, &w.z2, &w.h1, &w.h2}) {
      for (Eigen::Index k = 0; k < m->size(); ++k) {
        p.push_back(m->data()[k] > 0.0);
      }
    }
    return p;
  };
  const std::vector<int> active = pattern(ws);
  auto probe_loss = [&](bool &same) {
    Workspace pw;
    const auto out = probe.Forward(images, batch, pw);
    same = same && pattern(pw) == active;
    return foref::AngularLoss(out, labels);
  };
  auto numeric = [&](size_t i) -> std::optional<double> {
    bool same = true;
    probe.params()[i] = net.params()[i] + h;
    const double up = probe_loss(same);
    probe.params()[i] = net.params()[i] - h;
    const double down = probe_loss(same);
    probe.params()[i] = net.params()[i];
    if (!same) return std::nullopt;
    return (up - down) / (2 * h);
  };
  auto sample = [&](size_t offset, size_t size, int count) {
    std::uniform_int_distribution<size_t> pick(0, size - 1);
    std::vector<std::pair<size_t, double>> found;
    for (int tries = 0;
         static_cast<int>(found.size()) < count && tries < 20 * count;
         ++tries) {
      const size_t i = offset + pick(rng);
      if (auto fd = numeric(i)) found.emplace_back(i, *fd);
    }
    return found;
  };

  GradientReport report;
  for (const foref::TensorInfo &t : foref::ParameterLayout()) {
    TensorGradientError e{std::string(t.name)};
    double diff = 0.0, norm = 0.0;
    for (const auto &[i, fd] : sample(t.offset, t.size, per_tensor)) {
      diff += (fd - grad[i]) * (fd - grad[i]);
      norm += std::max(fd * fd, grad[i] * grad[i]);
      ++e.checked;
    }
    e.relative_error = std::sqrt(diff / std::max(norm, 1e-30));
    report.tensors.push_back(e);
  }
  for (const auto &[i, fd] :
       sample(0, foref::ParameterCount(), random_parameters)) {
    const double scale = std::max({std::abs(fd), std::abs(grad[i]), 1e-6});
    report.parameters.push_back(std::abs(fd - grad[i]) / scale);
  }
  return report;
}

}  // namespace slsearch::oracle

#endif  // SLSEARCH_TESTS_ORACLES_H_
