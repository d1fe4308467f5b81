#pragma once

#include <functional>
#include <string>
#include <vector>

#include "absint/reducer/ddmin.hpp"

namespace absint::reducer {

enum class Granularity { functions, statements, tokens };
const char* to_string(Granularity g);

// Interestingness of a candidate program text.
using TextOracle = std::function<bool(const std::string& text)>;

struct ReduceOptions {
  // Print candidates with line markers so statements keep their original
  // file and line (needed by oracles keyed on a source location).
  bool preserve_lines = false;
  bool parallel = false;
  std::vector<Granularity> schedule{Granularity::functions, Granularity::statements,
                                    Granularity::tokens};
};

struct PassRecord {
  Granularity granularity;
  std::size_t units_before = 0;
  std::size_t units_after = 0;
  std::size_t lines_after = 0;
};

struct ReductionResult {
  std::string text;
  std::size_t original_lines = 0;
  std::size_t reduced_lines = 0;
  std::size_t oracle_calls = 0;     // oracle consultations
  std::size_t precheck_rejects = 0; // candidates that failed to parse
  std::vector<PassRecord> passes;

  double reduction_percent() const;
};

// Coarse-to-fine ddmin passes repeated to a fixpoint. Candidates that do not
// parse are uninteresting without consulting the oracle. Throws
// ReductionError when the original does not parse or is not interesting.
ReductionResult reduce_source(const std::string& text, const std::string& file,
                              const TextOracle& oracle, const ReduceOptions& opts = {});

// "program  original LoC  reduced LoC  reduction" header and row.
std::string result_table(const std::string& program, const ReductionResult& r);

}  // namespace absint::reducer
