#pragma once

#include <optional>
#include <string>

#include "tstab/rational.hpp"
#include "tstab/toric.hpp"

namespace tstab {

struct ReportChecks {
  bool bishop = false;
  bool sandwich_lower = false;
  bool sandwich_upper = false;
  std::optional<bool> csck;  // absent when the slope is undefined
};

// delta and alpha need L big; s, beta and checks need L ample; mu further
// needs -K nef.
struct ThresholdReport {
  std::string variety;
  RatVector divisor;
  Rational delta;
  RatVector delta_witness;
  Rational alpha;
  RatVector alpha_witness;
  std::optional<Rational> s;
  std::optional<Rational> beta;
  Rational vol;
  std::optional<Rational> mu;
  std::optional<ReportChecks> checks;
};

// Throws NotBig.
ThresholdReport compute_report(const ToricRDivisor& l);

// Pretty-printed JSON with exact "p/q" values and *_decimal conveniences.
std::string to_json(const ThresholdReport& r);

std::string report_csv_header();
std::string to_csv_row(const ThresholdReport& r);

}  // namespace tstab
