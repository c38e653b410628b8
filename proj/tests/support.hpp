#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "nuset/nuset.hpp"
#include "oracle_values.inc"

namespace support {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(NUSET_TEST_DATA) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline nuset::TruncatedPresheaf load_fibred(const std::string& name) {
  return nuset::parse_nuset(read_data(name + ".json"));
}

/// Instances named by the oracle: a data file or standard_<nu>_<n>.
inline nuset::TruncatedPresheaf oracle_instance(const std::string& name) {
  if (name.rfind("standard_", 0) == 0) {
    int nu = name[9] - '0';
    int n = name[11] - '0';
    return nuset::standard_shape(nuset::Arity(nu), static_cast<std::size_t>(n));
  }
  return load_fibred(name);
}

template <class F>
nuset::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const nuset::Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected a nuset::Error");
}

}  // namespace support
