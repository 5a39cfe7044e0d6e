#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tracepoly/exactpoly.hpp"
#include "tracepoly/gaussrat.hpp"
#include "tracepoly/wordpoly.hpp"

namespace tracepoly {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitNonDiscrete = 10 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "x", "x,y", "x+yi", "yi"
cplx parse_complex(const std::string& s);

struct Table1Row {
  std::string word;  // order2 mode
  RatPoly2 expected;
  RatPoly2 computed;
  bool match() const { return expected == computed; }
};

std::vector<Table1Row> table1();

struct VerifyOptions {
  int samples = 100;
  unsigned long long seed = 1;
  PipelineOptions pipeline;
};

struct SweepResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  double worst = 0;
  nlohmann::json first_failure;  // null when none
};

struct VerifyReport {
  std::vector<SweepResult> sweeps;
  bool ok() const;
  nlohmann::json to_json() const;
};

VerifyReport run_verify(const VerifyOptions& opt);

}  // namespace tracepoly
