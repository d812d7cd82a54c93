#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "conespec/conespec.h"

namespace cli {

// Exit status 1: bad input. Exit status 2: a numerical check or assertion failed.
struct Failure : std::runtime_error {
  Failure(int exit_code, const std::string& what) : std::runtime_error(what), exit_code(exit_code) {}
  int exit_code;
};

inline int exit_code_for(cs_status s) {
  switch (s) {
    case CS_ERR_TOLERANCE:
    case CS_ERR_CONVERGENCE:
    case CS_ERR_INTERNAL:
      return 2;
    default:
      return 1;
  }
}

inline void check(cs_status s) {
  if (s == CS_OK) return;
  std::string message = cs_last_error();
  if (message.empty()) message = cs_status_string(s);
  throw Failure(exit_code_for(s), message);
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Group = std::unique_ptr<cs_group, Deleter<cs_group, cs_group_free>>;
using SpinStructures = std::unique_ptr<cs_spin_structures, Deleter<cs_spin_structures, cs_spin_structures_free>>;
using RateSet = std::unique_ptr<cs_rate_set, Deleter<cs_rate_set, cs_rate_set_free>>;
using FunctionPair = std::unique_ptr<cs_function_pair, Deleter<cs_function_pair, cs_function_pair_free>>;

}  // namespace cli
