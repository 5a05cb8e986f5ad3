// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "tacspin/common.hpp"
#include "tacspin/mlp.hpp"
#include "tacspin/rng.hpp"

namespace tacspin {

// Sliding window of recent pressure frames (flattened fingers x sensors
// matrices). Zero-filled at episode start so early embeddings are defined.
class TactileWindow {
 public:
  TactileWindow(int window, int frame_dim)
      : buf_(Eigen::MatrixXd::Zero(frame_dim, window)) {
    if (window < 1 || frame_dim < 1)
      throw ConfigError("tactile window dims must be positive");
  }

  int window() const { return static_cast<int>(buf_.cols()); }
  int frame_dim() const { return static_cast<int>(buf_.rows()); }

  void reset() {
    buf_.setZero();
    head_ = 0;
  }

  void push(const Eigen::VectorXd& frame) {
    if (frame.size() != buf_.rows())
      throw InputError("tactile frame dim mismatch");
    buf_.col(head_) = frame;
    head_ = (head_ + 1) % window();
  }

  // oldest frame first, so the layout is independent of the ring head
  Eigen::VectorXd flatten() const {
    Eigen::VectorXd out(buf_.size());
    const int w = window();
    for (int j = 0; j < w; ++j)
      out.segment(j * buf_.rows(), buf_.rows()) = buf_.col((head_ + j) % w);
    return out;
  }

  Eigen::VectorXd newest() const {
    return buf_.col((head_ + window() - 1) % window());
  }

 private:
  Eigen::MatrixXd buf_;
  int head_ = 0;
};

struct EncoderPretrainResult {
  double initial_loss = 0.0;
  double final_loss = 0.0;
};

// Frozen tactile embedding. The trunk maps a flattened window to a bounded
// latent vector; a small regression head, trained jointly to predict the
// lid's torsional friction, rides along in the file as a diagnostic. The
// embedding itself never depends on the head.
class TactileEncoder {
 public:
  enum class Mode { kMlp, kPassthrough };

  static TactileEncoder make_mlp(int window, int fingers, int per_finger,
                                 int latent, int hidden, Rng& rng) {
    TactileEncoder e;
    e.mode_ = Mode::kMlp;
    e.window_ = window;
    e.fingers_ = fingers;
    e.per_finger_ = per_finger;
    e.latent_ = latent;
    const int in = window * fingers * per_finger;
    e.trunk_ = Mlp({in, hidden, hidden, latent}, Act::kTanh, Act::kTanh, rng);
    e.head_ = Mlp({latent, 1}, Act::kIdentity, Act::kIdentity, rng);
    return e;
  }

  // z = the newest raw frame; no parameters, for ablation and debugging
  static TactileEncoder make_passthrough(int window, int fingers,
                                         int per_finger) {
    TactileEncoder e;
    e.mode_ = Mode::kPassthrough;
    e.window_ = window;
    e.fingers_ = fingers;
    e.per_finger_ = per_finger;
    e.latent_ = fingers * per_finger;
    return e;
  }

  Mode mode() const { return mode_; }
  int window() const { return window_; }
  int fingers() const { return fingers_; }
  int per_finger() const { return per_finger_; }
  int frame_dim() const { return fingers_ * per_finger_; }
  int latent_dim() const { return latent_; }

  Eigen::VectorXd encode(const TactileWindow& w) const {
    if (w.window() != window_ || w.frame_dim() != frame_dim())
      throw ConfigError("tactile window shape does not match encoder");
    if (mode_ == Mode::kPassthrough) return w.newest();
    return trunk_.forward1(w.flatten());
  }

  // friction estimate from the diagnostic head; embedding users never call this
  double predict_friction(const TactileWindow& w) const {
    if (mode_ != Mode::kMlp)
      throw ConfigError("passthrough encoder has no friction head");
    if (w.window() != window_ || w.frame_dim() != frame_dim())
      throw ConfigError("tactile window shape does not match encoder");
    return head_.forward1(trunk_.forward1(w.flatten()))[0];
  }

  double predict_friction_flat(const Eigen::VectorXd& flat) const {
    if (mode_ != Mode::kMlp)
      throw ConfigError("passthrough encoder has no friction head");
    return head_.forward1(trunk_.forward1(flat))[0];
  }

  // Supervised regression of friction from flattened windows (columns of x).
  // Trains trunk and head jointly with minibatch Adam; deterministic given
  // the rng stream.
  EncoderPretrainResult pretrain(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& y, int epochs,
                                 double lr, int minibatch, Rng& rng) {
    if (mode_ != Mode::kMlp)
      throw ConfigError("cannot pretrain a passthrough encoder");
    if (x.cols() == 0) throw InputError("empty pretraining dataset");
    if (x.cols() != y.size())
      throw InputError("pretraining labels do not match samples");
    if (x.rows() != trunk_.in_dim())
      throw InputError("pretraining sample dim mismatch");

    const int n = static_cast<int>(x.cols());
    const int nt = trunk_.param_count();
    const int nh = head_.param_count();
    Eigen::VectorXd params(nt + nh);
    params << trunk_.flat_params(), head_.flat_params();
    Adam opt(nt + nh, lr);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;

    EncoderPretrainResult result;
    result.initial_loss = dataset_loss(x, y);
    for (int epoch = 0; epoch < epochs; ++epoch) {
      rng.shuffle(order);
      for (int start = 0; start < n; start += minibatch) {
        const int b = std::min(minibatch, n - start);
        Eigen::MatrixXd xb(x.rows(), b);
        Eigen::VectorXd yb(b);
        for (int i = 0; i < b; ++i) {
          xb.col(i) = x.col(order[start + i]);
          yb[i] = y[order[start + i]];
        }
        Mlp::Tape ttape, htape;
        const Eigen::MatrixXd z = trunk_.forward(xb, &ttape);
        const Eigen::MatrixXd pred = head_.forward(z, &htape);
        // L = 1/(2b) * sum (pred - y)^2
        const Eigen::MatrixXd dpred =
            (pred.row(0).transpose() - yb).transpose() / b;
        Eigen::VectorXd ghead, gtrunk;
        Eigen::MatrixXd dz;
        head_.backward(htape, dpred, ghead, &dz);
        trunk_.backward(ttape, dz, gtrunk);
        Eigen::VectorXd grad(nt + nh);
        grad << gtrunk, ghead;
        opt.step(params, grad);
        trunk_.set_flat_params(params.head(nt));
        head_.set_flat_params(params.tail(nh));
      }
    }
    result.final_loss = dataset_loss(x, y);
    return result;
  }

  double dataset_loss(const Eigen::MatrixXd& x,
                      const Eigen::VectorXd& y) const {
    const Eigen::MatrixXd pred = head_.forward(trunk_.forward(x));
    return 0.5 * (pred.row(0).transpose() - y).squaredNorm() / x.cols();
  }

  // fnv1a over the exact parameter bytes; the freeze invariant is
  // "this number never changes during a training run"
  std::uint64_t checksum() const {
    if (mode_ == Mode::kPassthrough) return fnv1a(std::string());
    const Eigen::VectorXd pt = trunk_.flat_params();
    const Eigen::VectorXd ph = head_.flat_params();
    const std::uint64_t h =
        fnv1a(pt.data(), sizeof(double) * static_cast<std::size_t>(pt.size()));
    return fnv1a(ph.data(),
                 sizeof(double) * static_cast<std::size_t>(ph.size()), h);
  }

  void save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write encoder file: " + path);
    os.write("TSEN", 4);
    write_i32(os, kFormatVersion);
    write_i32(os, static_cast<std::int32_t>(mode_));
    write_i32(os, window_);
    write_i32(os, fingers_);
    write_i32(os, per_finger_);
    write_i32(os, latent_);
    if (mode_ == Mode::kMlp) {
      trunk_.save(os);
      head_.save(os);
    }
    const std::uint64_t sum = checksum();
    os.write(reinterpret_cast<const char*>(&sum), sizeof(sum));
    if (!os) throw ConfigError("short write on encoder file: " + path);
  }

  static TactileEncoder load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open encoder file: " + path);
    char magic[4] = {};
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "TSEN")
      throw InputError("not an encoder file: " + path);
    const std::int32_t version = read_i32(is);
    if (version != kFormatVersion)
      throw InputError("unsupported encoder file version");
    TactileEncoder e;
    e.mode_ = static_cast<Mode>(read_i32(is));
    e.window_ = read_i32(is);
    e.fingers_ = read_i32(is);
    e.per_finger_ = read_i32(is);
    e.latent_ = read_i32(is);
    if (!is || e.window_ < 1 || e.fingers_ < 1 || e.per_finger_ < 1 ||
        e.latent_ < 1)
      throw InputError("corrupt encoder header");
    if (e.mode_ == Mode::kMlp) {
      e.trunk_ = Mlp::load(is);
      e.head_ = Mlp::load(is);
    }
    std::uint64_t stored = 0;
    is.read(reinterpret_cast<char*>(&stored), sizeof(stored));
    if (!is || stored != e.checksum())
      throw InputError("encoder file checksum mismatch");
    return e;
  }

 private:
  static constexpr std::int32_t kFormatVersion = 1;

  static void write_i32(std::ostream& os, std::int32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  static std::int32_t read_i32(std::istream& is) {
    std::int32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
  }

  Mode mode_ = Mode::kPassthrough;
  int window_ = 1;
  int fingers_ = 1;
  int per_finger_ = 1;
  int latent_ = 1;
  Mlp trunk_;
  Mlp head_;
};

}  // namespace tacspin
