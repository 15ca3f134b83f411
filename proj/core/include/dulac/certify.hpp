#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dulac/bernstein.hpp"
#include "dulac/box.hpp"
#include "dulac/multiplier.hpp"
#include "dulac/vector_field.hpp"

namespace dulac {

inline constexpr int kDefaultMaxDepth = 12;

struct Positive {
  int max_depth_used = 0;
  long box_count = 0;
};

/// Exact subdivision vertex where the carrier is <= 0.
struct Violation {
  Rat x;
  Rat y;
  Rat value;

  Point witness() const { return {x.get_d(), y.get_d()}; }
};

struct Inconclusive {
  int depth_limit = 0;
  long undecided_boxes = 0;
};

using Outcome = std::variant<Positive, Violation, Inconclusive>;

struct Certificate {
  Outcome outcome;
  Poly carrier;
  Box2 box;

  bool is_positive() const { return std::holds_alternative<Positive>(outcome); }
  bool is_violation() const { return std::holds_alternative<Violation>(outcome); }
  /// "positive", "violation" or "inconclusive".
  std::string outcome_name() const;
  /// Deepest subdivision level reached (depth limit for inconclusive runs).
  int depth() const;

  friend bool operator==(const Certificate& a, const Certificate& b);
};

/// Branch-and-bound positivity proof on a box using exact Bernstein
/// coefficients and quaternary midpoint subdivision.
///
/// Each node first checks its four corners exactly and stops with Violation
/// at the first nonpositive one (corners in the order (x_min, y_min),
/// (x_max, y_min), (x_min, y_max), (x_max, y_max)). A node whose coefficients
/// are all positive is a certified leaf. Otherwise it is split until
/// max_depth, which leaves it undecided. With `parallel` the four top-level
/// children run concurrently; the result is identical to the sequential run.
Certificate certify_positive(const Poly& p, const Box2& box, int max_depth = kDefaultMaxDepth,
                             bool parallel = false);

/// Combines certificates of a partition of `box`: positive iff all are
/// positive, else the first violation, else inconclusive.
Certificate merge_certificates(const Poly& carrier, const Box2& box, std::span<const Certificate> parts);

enum class Conclusion { NoPeriodicOrbitFullyContained, NotCertified };

const char* to_string(Conclusion c);

struct DulacCertificate {
  Certificate certificate;
  Multiplier multiplier;
  VectorField system;
  Conclusion conclusion = Conclusion::NotCertified;
  std::vector<std::string> notes;
};

/// Certifies Div(B X) > 0 on the box through its sign-carrier.
DulacCertificate certify_dulac(const VectorField& system, const Multiplier& B, const Box2& box,
                               int max_depth = kDefaultMaxDepth);

/// certify_dulac with B = 1.
DulacCertificate bendixson(const VectorField& system, const Box2& box, int max_depth = kDefaultMaxDepth);

}  // namespace dulac
