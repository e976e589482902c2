#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mapforge {

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Throws InputError unless dist is square, symmetric, non-negative, zero
  // on the diagonal and satisfies the triangle inequality (up to 1e-9), and
  // weights (if given) are non-negative and sum to 1.
  explicit FiniteMetricSpace(std::vector<std::vector<double>> dist, std::vector<double> weights = {});

  std::size_t size() const { return d_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return d_[i][j]; }
  bool weighted() const { return !w_.empty(); }
  double weight(std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }
  double diameter() const;

  // Rows of comma-separated distances; an extra trailing column holds the
  // weight. Blank lines and lines starting with '#' are skipped. Errors
  // carry "line L, column C".
  static FiniteMetricSpace read_csv(std::istream& in);
  static FiniteMetricSpace read_csv_file(const std::string& path);

 private:
  std::vector<std::vector<double>> d_;
  std::vector<double> w_;
};

using Correspondence = std::vector<std::pair<std::size_t, std::size_t>>;

// sup |d_A(x,y) - d_B(x',y')| over pairs of pairs. DomainError unless C
// covers both spaces.
double distortion(const Correspondence& C, const FiniteMetricSpace& A, const FiniteMetricSpace& B);

struct GhResult {
  double value = 0;        // half the optimal distortion
  Correspondence witness;  // an optimal correspondence
};

// Exact Gromov-Hausdorff distance by branch and bound over correspondences
// that assign each point of A one partner and then cover the rest of B.
// `forced` pairs must belong to the correspondence (pointed variant).
// GuardError when |A||B| > 49.
GhResult gh_bruteforce(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const Correspondence& forced = {});

// Coupling as a |A| x |B| matrix of masses.
using Coupling = std::vector<std::vector<double>>;

// max(1 - nu(C), dis(C)/2). DomainError when nu's marginals differ from the
// weights of A and B, or either space is unweighted.
double ghp_upper_bound(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const Correspondence& C,
                       const Coupling& nu);

}  // namespace mapforge
