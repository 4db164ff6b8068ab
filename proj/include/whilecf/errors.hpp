#pragma once

// Exceptions shared by the proof-tree transformers and relation builders.

#include "whilecf/assertions.hpp"

#include <stdexcept>
#include <string>

namespace whilecf {

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct SideConditionError : std::runtime_error {
  Verdict counterexample;
  explicit SideConditionError(const std::string& what, Verdict v = Verdict::pass())
      : std::runtime_error(what), counterexample(std::move(v)) {}
};

struct EmptyDomain : std::runtime_error {
  EmptyDomain() : std::runtime_error("empty quantifier domain") {}
};

} // namespace whilecf
