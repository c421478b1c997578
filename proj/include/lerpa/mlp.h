#ifndef LERPA_MLP_H_
#define LERPA_MLP_H_

// Single-hidden-layer perceptron: sigmoid hidden units, linear outputs.
//
// The four outputs estimate the probabilities of winning 3, 2 and 1 tricks
// and of being Lerpa'd. Outputs are raw linear values; nothing clamps them
// into [0, 1].
//
// All parameters live in one flat vector laid out as
//   W1 (hidden x input, row-major) | b1 (hidden) | W2 (4 x hidden) | b2 (4)
// so gradients and eligibility traces are plain vectors of the same length.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lerpa/encoder.h"
#include "lerpa/rng.h"

namespace lerpa {

inline constexpr int kNumOutputs = 4;
inline constexpr int kDefaultHiddenUnits = 50;
inline constexpr double kInitWeightRange = 0.1;

// (A, B, C, D) = P(+3), P(+2), P(+1), P(-3).
using OutcomeDistribution = std::array<double, kNumOutputs>;

// Expected chips 3A + 2B + C - 3D.
double scalar_prediction(const OutcomeDistribution& y);

struct ForwardTrace {
  std::vector<double> input;
  std::vector<double> hidden;
  OutcomeDistribution y{};
};

// One gradient vector (same layout as Mlp::params) per output.
using GradientSet = std::array<std::vector<double>, kNumOutputs>;

class Mlp {
 public:
  // Weights uniform on [-0.1, 0.1], biases zero.
  Mlp(Rng& rng, int input_dim = kObservationSize,
      int hidden_dim = kDefaultHiddenUnits);
  // All-zero parameters.
  Mlp(int input_dim, int hidden_dim);

  int input_dim() const { return input_dim_; }
  int hidden_dim() const { return hidden_dim_; }
  std::size_t num_params() const { return params_.size(); }

  std::span<const double> params() const { return params_; }
  std::span<double> params() { return params_; }

  // Offsets into params().
  std::size_t w1_index(int hidden, int input) const {
    return static_cast<std::size_t>(hidden) * input_dim_ + input;
  }
  std::size_t b1_index(int hidden) const {
    return static_cast<std::size_t>(hidden_dim_) * input_dim_ + hidden;
  }
  std::size_t w2_index(int output, int hidden) const {
    return static_cast<std::size_t>(hidden_dim_) * (input_dim_ + 1) +
           static_cast<std::size_t>(output) * hidden_dim_ + hidden;
  }
  std::size_t b2_index(int output) const {
    return static_cast<std::size_t>(hidden_dim_) * (input_dim_ + 1 + kNumOutputs) +
           output;
  }

  // Throws std::logic_error on an input of the wrong length.
  ForwardTrace forward(std::span<const double> x) const;
  ForwardTrace forward(const Observation& obs) const;

  // Throws std::runtime_error if any parameter is not finite.
  void check_finite() const;

  friend bool operator==(const Mlp&, const Mlp&) = default;

 private:
  int input_dim_;
  int hidden_dim_;
  std::vector<double> params_;
};

// Exact partial derivatives of every output with respect to every parameter,
// evaluated at the activations recorded in `trace`.
GradientSet grad_outputs(const Mlp& mlp, const ForwardTrace& trace);
void grad_outputs_into(const Mlp& mlp, const ForwardTrace& trace,
                       GradientSet& out);

// Binary weight file: the 8-byte magic "LRPMLP01", then input_dim, hidden_dim
// and output count as little-endian uint32, then every parameter as a
// little-endian IEEE-754 double in params() order.
void save_mlp(const Mlp& mlp, std::ostream& out);
Mlp load_mlp(std::istream& in);  // throws std::runtime_error

}  // namespace lerpa

#endif  // LERPA_MLP_H_
