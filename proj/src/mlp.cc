#include "lerpa/mlp.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lerpa {
namespace {

constexpr char kMlpMagic[8] = {'L', 'R', 'P', 'M', 'L', 'P', '0', '1'};

std::size_t param_count(int input_dim, int hidden_dim) {
  return static_cast<std::size_t>(hidden_dim) * input_dim + hidden_dim +
         static_cast<std::size_t>(kNumOutputs) * hidden_dim + kNumOutputs;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_le(std::istream& in, int nbytes) {
  unsigned char b[8] = {};
  if (!in.read(reinterpret_cast<char*>(b), nbytes)) {
    throw std::runtime_error("weight file truncated");
  }
  std::uint64_t v = 0;
  for (int i = nbytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

double scalar_prediction(const OutcomeDistribution& y) {
  return 3.0 * y[0] + 2.0 * y[1] + y[2] - 3.0 * y[3];
}

Mlp::Mlp(int input_dim, int hidden_dim)
    : input_dim_(input_dim), hidden_dim_(hidden_dim) {
  if (input_dim <= 0 || hidden_dim <= 0) {
    throw std::invalid_argument("Mlp: dimensions must be positive");
  }
  params_.assign(param_count(input_dim, hidden_dim), 0.0);
}

Mlp::Mlp(Rng& rng, int input_dim, int hidden_dim) : Mlp(input_dim, hidden_dim) {
  for (int j = 0; j < hidden_dim_; ++j) {
    for (int i = 0; i < input_dim_; ++i) {
      params_[w1_index(j, i)] = kInitWeightRange * (2.0 * rng.uniform() - 1.0);
    }
  }
  for (int k = 0; k < kNumOutputs; ++k) {
    for (int j = 0; j < hidden_dim_; ++j) {
      params_[w2_index(k, j)] = kInitWeightRange * (2.0 * rng.uniform() - 1.0);
    }
  }
}

ForwardTrace Mlp::forward(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != input_dim_) {
    throw std::logic_error("Mlp::forward: input has " +
                           std::to_string(x.size()) + " entries, expected " +
                           std::to_string(input_dim_));
  }
  ForwardTrace t;
  t.input.assign(x.begin(), x.end());
  t.hidden.resize(hidden_dim_);
  const double* w = params_.data();
  for (int j = 0; j < hidden_dim_; ++j) {
    const double* row = w + static_cast<std::size_t>(j) * input_dim_;
    double z = params_[b1_index(j)];
    for (int i = 0; i < input_dim_; ++i) z += row[i] * x[i];
    t.hidden[j] = sigmoid(z);
  }
  for (int k = 0; k < kNumOutputs; ++k) {
    double s = params_[b2_index(k)];
    const double* row = w + w2_index(k, 0);
    for (int j = 0; j < hidden_dim_; ++j) s += row[j] * t.hidden[j];
    t.y[k] = s;
  }
  return t;
}

ForwardTrace Mlp::forward(const Observation& obs) const {
  const auto x = obs.as_input();
  return forward(std::span<const double>(x));
}

void Mlp::check_finite() const {
  for (double p : params_) {
    if (!std::isfinite(p)) throw std::runtime_error("non-finite network weight");
  }
}

void grad_outputs_into(const Mlp& mlp, const ForwardTrace& trace,
                       GradientSet& out) {
  const int n_in = mlp.input_dim();
  const int n_hid = mlp.hidden_dim();
  const auto params = mlp.params();
  for (int k = 0; k < kNumOutputs; ++k) {
    std::vector<double>& g = out[k];
    g.assign(mlp.num_params(), 0.0);
    for (int j = 0; j < n_hid; ++j) {
      const double h = trace.hidden[j];
      // d y_k / d z_j for the hidden pre-activation z_j.
      const double dz = params[mlp.w2_index(k, j)] * h * (1.0 - h);
      double* row = g.data() + mlp.w1_index(j, 0);
      for (int i = 0; i < n_in; ++i) row[i] = dz * trace.input[i];
      g[mlp.b1_index(j)] = dz;
      g[mlp.w2_index(k, j)] = h;
    }
    g[mlp.b2_index(k)] = 1.0;
  }
}

GradientSet grad_outputs(const Mlp& mlp, const ForwardTrace& trace) {
  GradientSet out;
  grad_outputs_into(mlp, trace, out);
  return out;
}

void save_mlp(const Mlp& mlp, std::ostream& out) {
  out.write(kMlpMagic, sizeof(kMlpMagic));
  put_u32(out, static_cast<std::uint32_t>(mlp.input_dim()));
  put_u32(out, static_cast<std::uint32_t>(mlp.hidden_dim()));
  put_u32(out, kNumOutputs);
  for (double p : mlp.params()) put_f64(out, p);
  if (!out) throw std::runtime_error("failed writing weight file");
}

Mlp load_mlp(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMlpMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not a weight file (bad magic)");
  }
  const auto input_dim = static_cast<int>(get_le(in, 4));
  const auto hidden_dim = static_cast<int>(get_le(in, 4));
  const auto outputs = static_cast<int>(get_le(in, 4));
  if (outputs != kNumOutputs || input_dim <= 0 || hidden_dim <= 0 ||
      input_dim > 1 << 16 || hidden_dim > 1 << 16) {
    throw std::runtime_error("weight file has unsupported dimensions");
  }
  Mlp mlp(input_dim, hidden_dim);
  for (double& p : mlp.params()) {
    p = std::bit_cast<double>(get_le(in, 8));
  }
  return mlp;
}

}  // namespace lerpa
