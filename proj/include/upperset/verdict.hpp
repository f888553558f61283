#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upperset/rational.hpp"

namespace upperset {

enum class Status { holds, fails, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::fails:
      return "fails";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

inline Status status_from_string(const std::string& s) {
  if (s == "holds") return Status::holds;
  if (s == "fails") return Status::fails;
  if (s == "inconclusive") return Status::inconclusive;
  throw std::invalid_argument("unknown verdict status: " + s);
}

// Data needed to re-check a failure (or to exhibit a positive certificate).
// `kind` names the check that produced it; unused fields stay empty.
struct Witness {
  std::string kind;
  Vec x;          // point of X
  Vec z;          // point of Z
  Vec direction;  // z* direction
  std::optional<Rational> radius;
  std::optional<Rational> epsilon;
  std::vector<Vec> sequence;    // x's approaching x0, one per grid level
  std::vector<Vec> directions;  // per-level z* directions, parallel to sequence
  std::vector<std::vector<Vec>> groups;  // per-level finite samples of a neighborhood
  std::string note;
};

struct Verdict {
  Status status = Status::inconclusive;
  std::optional<Witness> witness;
  int resolution = 0;  // finest grid level examined
  std::string basis;   // how the status was decided

  static Verdict holds(std::string basis, int resolution = 0, std::optional<Witness> w = std::nullopt) {
    return {Status::holds, std::move(w), resolution, std::move(basis)};
  }
  static Verdict fails(Witness w, int resolution, std::string basis = "counterexample") {
    return {Status::fails, std::move(w), resolution, std::move(basis)};
  }
  static Verdict inconclusive(int resolution, std::string basis = "no certificate at examined resolution") {
    return {Status::inconclusive, std::nullopt, resolution, std::move(basis)};
  }

  bool decisive() const { return status != Status::inconclusive; }
};

}  // namespace upperset
