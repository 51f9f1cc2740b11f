#pragma once

// Batch runs of the rectangle estimates over the harmonic family, shared by
// the CLI and the acceptance driver.

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kornshell/rect_harmonic.hpp"

namespace kornshell::rect {

struct LemmaRow {
  std::string lemma;   // lemma31, step1, lemma32, lemma33
  std::string kind;
  double param = 0;
  double h = 0;
  double b = 0;
  double ratio = 0;
};

struct LemmaCheck {
  std::string name;
  double value = 0;
  double bound = 0;
  bool passed = false;
};

struct LemmaSuiteConfig {
  std::vector<double> hs{1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  double b = 1.0;
  std::string kind;   // empty: every family member
  std::vector<double> aspects{1.0, 4.0, 16.0};
};

struct LemmaSuite {
  std::vector<LemmaRow> rows;
  std::vector<LemmaCheck> checks;
  bool passed() const;
  nlohmann::json to_json() const;
  /// Columns: lemma, kind, param, h, b, ratio.
  std::string to_csv() const;
};

struct OneDimCase {
  std::string name;
  std::function<double(double)> f;
  double a = 1;
};

/// 20 functions on [0, 2a]: polynomials, trigonometric and piecewise-linear.
std::vector<OneDimCase> lemma32_battery();

/// Throws std::invalid_argument for b <= 3h, an unknown kind or fewer than
/// three thicknesses.
LemmaSuite run_lemma_suite(const LemmaSuiteConfig& cfg);

}  // namespace kornshell::rect
