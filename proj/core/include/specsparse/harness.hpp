#pragma once

// Experiment runner.  Takes a declarative spec (what to run, on which graph,
// how many repetitions, where to put the outputs), dispatches to the library,
// and produces a JSON report plus an optional CSV table with one row per run.
// Everything except the report's timestamp header is a pure function of the
// spec, so re-running a spec reproduces the CSV byte for byte.

#include <cstdint>
#include <limits>
#include <string>

#include "json.hpp"

namespace specsparse {

struct ExperimentSpec {
  // ab-certify | game | sparsify | laguerre | validate
  std::string kind;

  // Graph source: a file wins if set, otherwise a generator.
  std::string graph_file;
  std::string generator = "random-regular";  // complete|cycle|hypercube|random-regular
  int n = 0;
  int d = 0;
  int min_girth = 2;
  // Overrides every edge weight before normalization; NaN leaves weights alone.
  double uniform_weight = std::numeric_limits<double>::quiet_NaN();

  int k = 1;           // certificate radius
  int rounds = 0;      // game length T; 0 means ceil(d n / 2)
  std::string player = "bss";  // bss | uniform | greedy-cond | random
  double laguerre_s = -1.0;    // laguerre kind: S parameter; < 0 means n

  std::uint64_t seed = 1;
  int repetitions = 1;

  std::string json_out;   // empty: don't write
  std::string csv_out;    // empty: don't write
  std::string graph_out;  // sparsify only: where to save the sparsifier
};

struct Report {
  nlohmann::json document;  // header + spec echo + runs + summary
  std::string csv;          // deterministic table body (may be empty)
  bool passed = false;
};

// Validates the spec (throws std::invalid_argument with a reason before any
// compute), then runs all repetitions.  Module errors inside a repetition do
// not abort the batch: the failing run's row carries the error message and
// the parameters, and the report is marked failed.
Report run(const ExperimentSpec& spec);

// Fixed-seed battery over the library's invariants: characteristic-polynomial
// tracking, majorization against the balanced polynomial, barrier safety, and
// certificate soundness.  Failures are report content, not exceptions.
Report validate_suite();

// Writes document (pretty JSON) and CSV to the given paths; empty paths are
// skipped.  Parent directories must exist.
void write_report(const Report& report, const std::string& json_path,
                  const std::string& csv_path);

// Worker count for parallel repetitions: SPECSPARSE_WORKERS, default 1.
// Throws on unparsable or nonpositive values.
int worker_count();

}  // namespace specsparse
