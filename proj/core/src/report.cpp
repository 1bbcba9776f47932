#include "tstab/report.hpp"

#include <json.hpp>

#include "tstab/errors.hpp"
#include "tstab/thresholds.hpp"

namespace tstab {
namespace {

using Json = nlohmann::ordered_json;

Json int_array(const RatVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(q.get_num().get_si());
  return a;
}

void put(Json& j, const std::string& key, const std::optional<Rational>& q) {
  if (q) {
    j[key] = to_pq(*q);
    j[key + "_decimal"] = to_double(*q);
  } else {
    j[key] = nullptr;
    j[key + "_decimal"] = nullptr;
  }
}

std::string join(const RatVector& v, char sep) {
  std::string out;
  for (const auto& q : v) {
    if (!out.empty()) out += sep;
    out += q.get_den() == 1 ? q.get_num().get_str() : to_pq(q);
  }
  return out;
}

std::string opt(const std::optional<Rational>& q) { return q ? to_pq(*q) : std::string(); }

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

ThresholdReport compute_report(const ToricRDivisor& l) {
  if (!is_big(l)) throw NotBig("compute: divisor is not big");
  ThresholdReport r;
  r.variety = l.variety().name();
  r.divisor = l.coeffs();
  auto d = delta(l);
  r.delta = d.value;
  r.delta_witness = d.witness;
  auto a = alpha(l);
  r.alpha = a.value;
  r.alpha_witness = a.witness;
  r.vol = vol(l);
  if (is_ample(l)) {
    r.s = nef_threshold(l).value;
    r.beta = beta(l);
    ReportChecks c;
    c.bishop = bishop_check(l).holds;
    auto sw = sandwich_check(l);
    c.sandwich_lower = sw.lower;
    c.sandwich_upper = sw.upper;
    try {
      r.mu = slope(l);
      c.csck = csck_criterion(l).holds;
    } catch (const SlopeUndefined&) {
    }
    r.checks = c;
  }
  return r;
}

std::string to_json(const ThresholdReport& r) {
  Json j;
  j["variety"] = r.variety;
  Json div = Json::array();
  for (const auto& q : r.divisor) div.push_back(to_pq(q));
  j["divisor"] = div;
  put(j, "delta", r.delta);
  j["delta_witness"] = int_array(r.delta_witness);
  put(j, "alpha", r.alpha);
  j["alpha_witness"] = int_array(r.alpha_witness);
  put(j, "s", r.s);
  put(j, "beta", r.beta);
  put(j, "vol", r.vol);
  put(j, "mu", r.mu);
  if (r.checks) {
    Json c;
    c["bishop"] = r.checks->bishop;
    c["sandwich_lower"] = r.checks->sandwich_lower;
    c["sandwich_upper"] = r.checks->sandwich_upper;
    if (r.checks->csck) {
      c["csck"] = *r.checks->csck;
    } else {
      c["csck"] = nullptr;
    }
    j["checks"] = c;
  } else {
    j["checks"] = nullptr;
  }
  // delta is minimized over toric valuations only.
  j["valuations"] = "toric";
  return j.dump(2) + "\n";
}

std::string report_csv_header() {
  return "variety,divisor,delta,delta_witness,alpha,alpha_witness,s,beta,vol,mu,"
         "bishop,sandwich_lower,sandwich_upper,csck";
}

std::string to_csv_row(const ThresholdReport& r) {
  std::string row = r.variety + "," + join(r.divisor, ';') + "," + to_pq(r.delta) + "," +
                    join(r.delta_witness, ';') + "," + to_pq(r.alpha) + "," + join(r.alpha_witness, ';') +
                    "," + opt(r.s) + "," + opt(r.beta) + "," + to_pq(r.vol) + "," + opt(r.mu);
  if (r.checks) {
    row += "," + flag(r.checks->bishop) + "," + flag(r.checks->sandwich_lower) + "," +
           flag(r.checks->sandwich_upper) + "," + (r.checks->csck ? flag(*r.checks->csck) : "");
  } else {
    row += ",,,,";
  }
  return row;
}

}  // namespace tstab
