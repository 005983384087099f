#pragma once

// APX text format: "arg(NAME)." and "att(NAME,NAME)." statements, any number
// per line, '%' starts a comment that runs to the end of the line.

#include <string>
#include <string_view>
#include <vector>

#include "finarg/af.hpp"

namespace finarg {

struct ApxDocument {
  FiniteAF af;
  std::vector<std::string> names;  // index -> name, declaration order

  /// Index of a declared name; throws InputError when missing.
  ArgumentId index_of(std::string_view name) const;
};

/// Throws InputError ("line N: ...") on syntax errors, undeclared names and
/// duplicate declarations.
ApxDocument parse_apx(std::string_view text);

/// Canonical form: optional comment lines, then args in index order, then
/// attacks sorted by (attacker, target).
std::string emit_apx(const ApxDocument& doc, const std::vector<std::string>& comments = {});

/// Names a0, a1, ... for frameworks without names.
ApxDocument with_default_names(FiniteAF af);

}  // namespace finarg
