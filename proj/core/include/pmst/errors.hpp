#pragma once

#include <stdexcept>
#include <string>

namespace pmst {

// Bad caller input: wrong dimensions, violated preconditions, malformed files.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A certification pipeline stage could not complete (noise too large,
// contradictory data, infeasible chain). Carries the stage label.
class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace pmst
