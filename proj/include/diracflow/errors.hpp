#pragma once

#include <stdexcept>
#include <string>

namespace diracflow {

// A coefficient has no s->infinity limit (secular term survived).
struct NonConvergent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Generator substitution would change the Z2 grading.
struct ParityMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  std::string expected;

  ParseError(int line_, int column_, std::string expected_, const std::string& found)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(column_) + ": expected " + expected_ +
                           ", found " + found),
        line(line_),
        column(column_),
        expected(std::move(expected_)) {}
};

// Random model kept a near-singular spectrum after the redraw budget.
struct Degenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenvalueMinusOne : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// artanh argument has spectrum on the principal branch cut.
struct BranchFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepCollapse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FGeneratorPresent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check between two independent routes failed.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace diracflow
