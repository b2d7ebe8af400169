#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cornerext {

/// Deterministic, portable random source: mt19937_64 (bit-exact per the
/// standard) with uniforms built from the top 53 bits, so tables reproduce
/// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

struct ErrorRow {
  std::string case_id;
  std::string check;
  std::string location;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Machine-readable result table; rows sorted by (case, check, location)
/// before serialization so parallel producers never change bytes.
struct ErrorTable {
  std::vector<ErrorRow> rows;

  void add(std::string case_id, std::string check, std::string location, double value,
           double bound);
  bool all_pass() const;
  void sort_rows();
  std::string to_csv();  // sorts, then writes "case,check,location,value,bound,status"
};

}  // namespace cornerext
