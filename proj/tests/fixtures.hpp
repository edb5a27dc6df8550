#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "penlq/penalty.hpp"

namespace fixtures {

struct NamedPenalty {
  std::string name;
  penlq::PenaltySpec spec;
  std::function<double(double)> reference;
};

// The builtin example penalties at their default parameters, each paired
// with an independent closed form.
inline std::vector<NamedPenalty> accepted_penalties() {
  using penlq::PenaltySpec;
  return {
      {"l0", PenaltySpec::l0(), [](double t) { return oracle::l0(t); }},
      {"bridge", PenaltySpec::bridge(0.5), [](double t) { return oracle::bridge(t, 0.5); }},
      {"hard_threshold", PenaltySpec::hard_threshold(1.0),
       [](double t) { return oracle::hard(t, 1.0); }},
      {"scad", PenaltySpec::scad(1.0, 3.0), [](double t) { return oracle::scad(t, 1.0, 3.0); }},
      {"mcp", PenaltySpec::mcp(1.0, 1.0), [](double t) { return oracle::mcp(t, 1.0, 1.0); }},
      {"clipped_l1", PenaltySpec::clipped_l1(1.0),
       [](double t) { return oracle::piecewise_linear(t, 1.0, 0.0, 1.0); }},
      {"fraction", PenaltySpec::fraction(1.0), [](double t) { return oracle::fraction(t, 1.0); }},
      {"log", PenaltySpec::log(1.0), [](double t) { return oracle::log_pen(t, 1.0); }},
  };
}

// Non-default parameters, to keep the tests from only seeing gamma = 1.
inline std::vector<NamedPenalty> varied_penalties() {
  using penlq::PenaltySpec;
  return {
      {"bridge_0.3", PenaltySpec::bridge(0.3), [](double t) { return oracle::bridge(t, 0.3); }},
      {"hard_2", PenaltySpec::hard_threshold(2.0), [](double t) { return oracle::hard(t, 2.0); }},
      {"scad_0.5_3.7", PenaltySpec::scad(0.5, 3.7),
       [](double t) { return oracle::scad(t, 0.5, 3.7); }},
      {"mcp_2_1.5", PenaltySpec::mcp(2.0, 1.5), [](double t) { return oracle::mcp(t, 2.0, 1.5); }},
      {"pl_3_1_0.5", PenaltySpec::piecewise_linear(3.0, 1.0, 0.5),
       [](double t) { return oracle::piecewise_linear(t, 3.0, 1.0, 0.5); }},
      {"fraction_4", PenaltySpec::fraction(4.0), [](double t) { return oracle::fraction(t, 4.0); }},
      {"log_10", PenaltySpec::log(10.0), [](double t) { return oracle::log_pen(t, 10.0); }},
  };
}

inline std::vector<NamedPenalty> all_penalties() {
  auto out = accepted_penalties();
  for (auto& p : varied_penalties()) out.push_back(std::move(p));
  return out;
}

}  // namespace fixtures
