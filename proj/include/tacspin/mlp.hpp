// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <istream>
#include <ostream>
#include <vector>

#include "tacspin/common.hpp"
#include "tacspin/rng.hpp"

namespace tacspin {

enum class Act { kTanh, kIdentity };

// Small dense net, batch-as-columns. Parameters also expose a flat view
// (layer by layer, weights column-major then bias) so the optimizer, the
// serializer, and the finite-difference checks all agree on one ordering.
class Mlp {
 public:
  Mlp() = default;

  Mlp(const std::vector<int>& dims, Act hidden, Act output, Rng& rng) {
    if (dims.size() < 2) throw ConfigError("mlp needs at least two dims");
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
      const int in = dims[l], out = dims[l + 1];
      if (in < 1 || out < 1) throw ConfigError("mlp dims must be positive");
      // Xavier-uniform fan-in/fan-out
      const double lim = std::sqrt(6.0 / (in + out));
      Eigen::MatrixXd w(out, in);
      for (int j = 0; j < in; ++j)
        for (int i = 0; i < out; ++i) w(i, j) = rng.uniform(-lim, lim);
      w_.push_back(std::move(w));
      b_.push_back(Eigen::VectorXd::Zero(out));
      act_.push_back(l + 2 < dims.size() ? hidden : output);
    }
  }

  int layer_count() const { return static_cast<int>(w_.size()); }
  int in_dim() const { return static_cast<int>(w_.front().cols()); }
  int out_dim() const { return static_cast<int>(w_.back().rows()); }

  // shrink the last layer, useful for near-zero initial policy means
  void scale_last(double s) { w_.back() *= s; }

  struct Tape {
    std::vector<Eigen::MatrixXd> a;  // a[0] = input, a[l+1] = layer l output
  };

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Tape* tape = nullptr) const {
    if (x.rows() != in_dim()) throw InputError("mlp input dim mismatch");
    Eigen::MatrixXd a = x;
    if (tape) tape->a.assign(1, a);
    for (int l = 0; l < layer_count(); ++l) {
      a = (w_[l] * a).colwise() + b_[l];
      if (act_[l] == Act::kTanh) a = a.array().tanh().matrix();
      if (tape) tape->a.push_back(a);
    }
    return a;
  }

  Eigen::VectorXd forward1(const Eigen::VectorXd& x) const {
    return forward(Eigen::MatrixXd(x)).col(0);
  }

  // Backprop from dL/d(output). Gradient lands in `grad` with the flat
  // layout; returns dL/d(input) when requested.
  void backward(const Tape& tape, const Eigen::MatrixXd& dldy,
                Eigen::VectorXd& grad, Eigen::MatrixXd* dldx = nullptr) const {
    grad.resize(param_count());
    Eigen::MatrixXd delta = dldy;
    Eigen::Index cursor = grad.size();
    for (int l = layer_count() - 1; l >= 0; --l) {
      if (act_[l] == Act::kTanh) {
        // tanh' = 1 - tanh^2, and tape->a[l+1] is already tanh(z)
        delta =
            (delta.array() * (1.0 - tape.a[l + 1].array().square())).matrix();
      }
      const Eigen::MatrixXd dw = delta * tape.a[l].transpose();
      const Eigen::VectorXd db = delta.rowwise().sum();
      cursor -= db.size();
      grad.segment(cursor, db.size()) = db;
      cursor -= dw.size();
      grad.segment(cursor, dw.size()) =
          Eigen::Map<const Eigen::VectorXd>(dw.data(), dw.size());
      if (l > 0 || dldx) delta = (w_[l].transpose() * delta).eval();
    }
    if (dldx) *dldx = delta;
  }

  int param_count() const {
    int n = 0;
    for (int l = 0; l < layer_count(); ++l)
      n += static_cast<int>(w_[l].size() + b_[l].size());
    return n;
  }

  Eigen::VectorXd flat_params() const {
    Eigen::VectorXd p(param_count());
    Eigen::Index cursor = 0;
    for (int l = 0; l < layer_count(); ++l) {
      p.segment(cursor, w_[l].size()) =
          Eigen::Map<const Eigen::VectorXd>(w_[l].data(), w_[l].size());
      cursor += w_[l].size();
      p.segment(cursor, b_[l].size()) = b_[l];
      cursor += b_[l].size();
    }
    return p;
  }

  void set_flat_params(const Eigen::VectorXd& p) {
    if (p.size() != param_count()) throw InputError("param vector size");
    Eigen::Index cursor = 0;
    for (int l = 0; l < layer_count(); ++l) {
      Eigen::Map<Eigen::VectorXd>(w_[l].data(), w_[l].size()) =
          p.segment(cursor, w_[l].size());
      cursor += w_[l].size();
      b_[l] = p.segment(cursor, b_[l].size());
      cursor += b_[l].size();
    }
  }

  void save(std::ostream& os) const {
    const std::int32_t nl = layer_count();
    os.write(reinterpret_cast<const char*>(&nl), sizeof(nl));
    for (int l = 0; l < nl; ++l) {
      const std::int32_t rows = static_cast<std::int32_t>(w_[l].rows());
      const std::int32_t cols = static_cast<std::int32_t>(w_[l].cols());
      const std::int32_t act = static_cast<std::int32_t>(act_[l]);
      os.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
      os.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
      os.write(reinterpret_cast<const char*>(&act), sizeof(act));
      os.write(reinterpret_cast<const char*>(w_[l].data()),
               static_cast<std::streamsize>(sizeof(double) * w_[l].size()));
      os.write(reinterpret_cast<const char*>(b_[l].data()),
               static_cast<std::streamsize>(sizeof(double) * b_[l].size()));
    }
  }

  static Mlp load(std::istream& is) {
    std::int32_t nl = 0;
    is.read(reinterpret_cast<char*>(&nl), sizeof(nl));
    if (!is || nl < 1 || nl > 64) throw InputError("corrupt mlp blob");
    Mlp m;
    for (int l = 0; l < nl; ++l) {
      std::int32_t rows = 0, cols = 0, act = 0;
      is.read(reinterpret_cast<char*>(&rows), sizeof(rows));
      is.read(reinterpret_cast<char*>(&cols), sizeof(cols));
      is.read(reinterpret_cast<char*>(&act), sizeof(act));
      if (!is || rows < 1 || cols < 1 || rows > 65536 || cols > 65536)
        throw InputError("corrupt mlp layer header");
      Eigen::MatrixXd w(rows, cols);
      Eigen::VectorXd b(rows);
      is.read(reinterpret_cast<char*>(w.data()),
              static_cast<std::streamsize>(sizeof(double) * w.size()));
      is.read(reinterpret_cast<char*>(b.data()),
              static_cast<std::streamsize>(sizeof(double) * b.size()));
      if (!is) throw InputError("truncated mlp blob");
      m.w_.push_back(std::move(w));
      m.b_.push_back(std::move(b));
      m.act_.push_back(static_cast<Act>(act));
    }
    return m;
  }

 private:
  std::vector<Eigen::MatrixXd> w_;
  std::vector<Eigen::VectorXd> b_;
  std::vector<Act> act_;
};

// Plain Adam over a flat parameter vector.
class Adam {
 public:
  Adam(int n, double lr, double b1 = 0.9, double b2 = 0.999,
       double eps = 1e-8)
      : m_(Eigen::VectorXd::Zero(n)),
        v_(Eigen::VectorXd::Zero(n)),
        lr_(lr),
        b1_(b1),
        b2_(b2),
        eps_(eps) {}

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
      throw InputError("adam size mismatch");
    ++t_;
    m_ = b1_ * m_ + (1.0 - b1_) * grad;
    v_ = b2_ * v_ + (1.0 - b2_) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(b1_, t_);
    const double c2 = 1.0 - std::pow(b2_, t_);
    params -= (lr_ / c1) * m_.cwiseQuotient(
                  ((v_ / c2).cwiseSqrt().array() + eps_).matrix());
  }

 private:
  Eigen::VectorXd m_, v_;
  double lr_, b1_, b2_, eps_;
  long t_ = 0;
};

// global-norm gradient clip, returns the pre-clip norm
inline double clip_grad_norm(Eigen::VectorXd& grad, double max_norm) {
  const double n = grad.norm();
  if (max_norm > 0.0 && n > max_norm) grad *= max_norm / n;
  return n;
}

}  // namespace tacspin
