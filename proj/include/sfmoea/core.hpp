#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfmoea {

/// Objective values of one solution. Minimization throughout; adapters negate
/// maximized objectives before handing points to the engine.
using ObjectivePoint = std::vector<double>;

using Rng = std::mt19937_64;

/// Raised when a caller breaks an operation's precondition (dimension
/// mismatch, infeasible input, empty set, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

/// SplitMix64 finalizer; used to derive independent stream seeds from one
/// root seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t root, std::uint64_t stream) {
  return Rng(mix_seed(root ^ mix_seed(stream + 1)));
}

/// Uniform index in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace sfmoea
