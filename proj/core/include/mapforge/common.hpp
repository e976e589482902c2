#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mapforge {

enum class Family : std::uint8_t { Triangulation, Quadrangulation };

// Stems per inner vertex.
constexpr unsigned stems_per_vertex(Family f) { return f == Family::Triangulation ? 2 : 1; }
// Label increase on the step blossom -> inner vertex.
constexpr int stem_return_step(Family f) { return f == Family::Triangulation ? 1 : 2; }
constexpr unsigned face_degree(Family f) { return f == Family::Triangulation ? 3 : 4; }
// Outdegree of vertices off the root face.
constexpr unsigned inner_outdegree(Family f) { return f == Family::Triangulation ? 3 : 2; }

std::string_view family_name(Family f);
Family parse_family(std::string_view s);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Caller broke a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};
// Input is well formed but outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};
// Malformed input (parse errors, broken pairing, wrong sizes).
class InputError : public Error {
 public:
  using Error::Error;
};
class GenusError : public InputError {
 public:
  GenusError(int genus, const std::string& what) : InputError(what), genus_(genus) {}
  int genus() const { return genus_; }

 private:
  int genus_;
};
class GuardError : public Error {
 public:
  using Error::Error;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed of the i-th independent stream derived from a run seed.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i) { return seed ^ splitmix64(i); }

// Mersenne twister with portable uniform draws; std distributions are
// implementation defined, these are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // Uniform on [0,1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  // Uniform on (0,1].
  double uniform_pos() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }
  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 eng_;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Runs body(i) for i in [0,count) over up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace mapforge
