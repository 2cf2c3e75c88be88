#pragma once

#include <string>
#include <vector>

namespace fusion {

// Sorts classify refinement-logic terms. Binders in constraints are always
// base-sorted (Int/Bool/Unit); Opaque covers declared type-constructor
// instances and type variables, which admit equality only.
struct Sort {
  enum class Kind { Int, Bool, Unit, Opaque };
  Kind kind = Kind::Int;
  std::string name;  // Opaque only

  static Sort mk_int() { return {Kind::Int, ""}; }
  static Sort mk_bool() { return {Kind::Bool, ""}; }
  static Sort mk_unit() { return {Kind::Unit, ""}; }
  static Sort opaque(std::string n) { return {Kind::Opaque, std::move(n)}; }

  bool is_int() const { return kind == Kind::Int; }
  bool is_bool() const { return kind == Kind::Bool; }

  bool operator==(const Sort& o) const { return kind == o.kind && name == o.name; }
  bool operator!=(const Sort& o) const { return !(*this == o); }
  bool operator<(const Sort& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    return name < o.name;
  }

  std::string show() const {
    switch (kind) {
      case Kind::Int: return "Int";
      case Kind::Bool: return "Bool";
      case Kind::Unit: return "Unit";
      case Kind::Opaque: return name;
    }
    return "?";
  }
};

}  // namespace fusion
