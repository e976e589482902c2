#include "mapforge/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mapforge/common.hpp"

namespace mapforge {

namespace {

constexpr double kTol = 1e-9;

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> dist, std::vector<double> weights)
    : d_(std::move(dist)), w_(std::move(weights)) {
  const std::size_t n = d_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d_[i].size() != n) throw InputError("metric: row " + std::to_string(i) + " has the wrong length");
    if (std::abs(d_[i][i]) > kTol) throw InputError("metric: non-zero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!(d_[i][j] >= 0) || !std::isfinite(d_[i][j]))
        throw InputError("metric: bad distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (std::abs(d_[i][j] - d_[j][i]) > kTol)
        throw InputError("metric: not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d_[i][k] > d_[i][j] + d_[j][k] + kTol)
          throw InputError("metric: triangle inequality fails for (" + std::to_string(i) + "," + std::to_string(j) +
                           "," + std::to_string(k) + ")");
  if (!w_.empty()) {
    if (w_.size() != n) throw InputError("metric: weight count differs from point count");
    double sum = 0;
    for (double w : w_) {
      if (!(w >= 0)) throw InputError("metric: negative weight");
      sum += w;
    }
    if (std::abs(sum - 1) > 1e-6) throw InputError("metric: weights sum to " + std::to_string(sum));
  }
}

double FiniteMetricSpace::diameter() const {
  double best = 0;
  for (const auto& row : d_)
    for (double x : row) best = std::max(best, x);
  return best;
}

FiniteMetricSpace FiniteMetricSpace::read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::size_t col = 1, pos = 0;
    for (;;) {
      const auto comma = line.find(',', pos);
      const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      double x;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw InputError("metric csv: line " + std::to_string(lineno) + ", column " + std::to_string(col) +
                         ": not a number: '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos)
        throw InputError("metric csv: line " + std::to_string(lineno) + ", column " + std::to_string(col) +
                         ": trailing characters in '" + cell + "'");
      row.push_back(x);
      if (comma == std::string::npos) break;
      pos = comma + 1;
      ++col;
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("metric csv: no rows");
  const std::size_t width = rows[0].size();
  if (width != n && width != n + 1)
    throw InputError("metric csv: line 1: expected " + std::to_string(n) + " or " + std::to_string(n + 1) + " columns");
  std::vector<double> weights;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != width)
      throw InputError("metric csv: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " columns, expected " + std::to_string(width));
    if (width == n + 1) {
      weights.push_back(rows[i].back());
      rows[i].pop_back();
    }
  }
  return FiniteMetricSpace(std::move(rows), std::move(weights));
}

FiniteMetricSpace FiniteMetricSpace::read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("metric csv: cannot open " + path);
  return read_csv(in);
}

double distortion(const Correspondence& C, const FiniteMetricSpace& A, const FiniteMetricSpace& B) {
  std::vector<std::uint8_t> ca(A.size(), 0), cb(B.size(), 0);
  for (const auto& [x, y] : C) {
    if (x >= A.size() || y >= B.size()) throw DomainError("distortion: pair out of range");
    ca[x] = cb[y] = 1;
  }
  if (std::count(ca.begin(), ca.end(), 0) || std::count(cb.begin(), cb.end(), 0))
    throw DomainError("distortion: relation is not a correspondence");
  double best = 0;
  for (const auto& [x, xp] : C)
    for (const auto& [y, yp] : C) best = std::max(best, std::abs(A(x, y) - B(xp, yp)));
  return best;
}

namespace {

class GhSearch {
 public:
  GhSearch(const FiniteMetricSpace& A, const FiniteMetricSpace& B) : A_(A), B_(B) {}

  // Distortion after adding (x, y) to the current relation.
  double with(std::size_t x, std::size_t y, double cur) const {
    for (const auto& [u, v] : rel_) cur = std::max(cur, std::abs(A_(x, u) - B_(y, v)));
    return cur;
  }

  void run(const Correspondence& forced) {
    double cur = 0;
    cover_a_.assign(A_.size(), 0);
    cover_b_.assign(B_.size(), 0);
    for (const auto& [x, y] : forced) {
      cur = with(x, y, cur);
      push(x, y);
    }
    // Any correspondence is an upper bound; use all pairs plus forced.
    Correspondence full(forced);
    for (std::size_t x = 0; x < A_.size(); ++x)
      for (std::size_t y = 0; y < B_.size(); ++y) full.emplace_back(x, y);
    best_ = distortion(full, A_, B_);
    best_rel_ = full;
    assign_a(0, cur);
  }

  double best() const { return best_; }
  const Correspondence& witness() const { return best_rel_; }

 private:
  void push(std::size_t x, std::size_t y) {
    rel_.emplace_back(x, y);
    ++cover_a_[x];
    ++cover_b_[y];
  }
  void pop() {
    --cover_a_[rel_.back().first];
    --cover_b_[rel_.back().second];
    rel_.pop_back();
  }

  void assign_a(std::size_t x, double cur) {
    if (cur >= best_) return;
    if (x == A_.size()) {
      cover_b(0, cur);
      return;
    }
    if (cover_a_[x]) {
      assign_a(x + 1, cur);
      return;
    }
    for (std::size_t y = 0; y < B_.size(); ++y) {
      const double next = with(x, y, cur);
      if (next >= best_) continue;
      push(x, y);
      assign_a(x + 1, next);
      pop();
    }
  }

  void cover_b(std::size_t y, double cur) {
    if (cur >= best_) return;
    while (y < B_.size() && cover_b_[y]) ++y;
    if (y == B_.size()) {
      best_ = cur;
      best_rel_ = rel_;
      return;
    }
    for (std::size_t x = 0; x < A_.size(); ++x) {
      const double next = with(x, y, cur);
      if (next >= best_) continue;
      push(x, y);
      cover_b(y + 1, next);
      pop();
    }
  }

  const FiniteMetricSpace& A_;
  const FiniteMetricSpace& B_;
  Correspondence rel_, best_rel_;
  std::vector<std::uint32_t> cover_a_, cover_b_;
  double best_ = 0;
};

}  // namespace

GhResult gh_bruteforce(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const Correspondence& forced) {
  if (A.size() == 0 || B.size() == 0) throw PreconditionError("gh_bruteforce: empty space");
  if (A.size() * B.size() > 49)
    throw GuardError("gh_bruteforce: |A||B| = " + std::to_string(A.size() * B.size()) + " exceeds 49");
  for (const auto& [x, y] : forced)
    if (x >= A.size() || y >= B.size()) throw DomainError("gh_bruteforce: forced pair out of range");
  GhSearch search(A, B);
  search.run(forced);
  return {search.best() / 2, search.witness()};
}

double ghp_upper_bound(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const Correspondence& C,
                       const Coupling& nu) {
  if (!A.weighted() || !B.weighted()) throw DomainError("ghp_upper_bound: both spaces need weights");
  if (nu.size() != A.size()) throw DomainError("ghp_upper_bound: coupling has the wrong number of rows");
  std::vector<double> col(B.size(), 0);
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (nu[i].size() != B.size()) throw DomainError("ghp_upper_bound: coupling has the wrong number of columns");
    double row = 0;
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (nu[i][j] < 0) throw DomainError("ghp_upper_bound: negative mass in coupling");
      row += nu[i][j];
      col[j] += nu[i][j];
    }
    if (std::abs(row - A.weight(i)) > 1e-9) throw DomainError("ghp_upper_bound: first marginal differs at " + std::to_string(i));
  }
  for (std::size_t j = 0; j < B.size(); ++j)
    if (std::abs(col[j] - B.weight(j)) > 1e-9) throw DomainError("ghp_upper_bound: second marginal differs at " + std::to_string(j));
  double mass = 0;
  for (const auto& [x, y] : C) mass += nu[x][y];
  const double dis = distortion(C, A, B);
  return std::max(1 - mass, dis / 2);
}

}  // namespace mapforge
