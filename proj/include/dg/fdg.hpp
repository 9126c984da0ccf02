// dg/fdg.hpp - the line-oriented text-based representation
//
// One token line per surface word, in angle brackets, followed by an
// indented analysis line:
//
//   <gave>
//   \t"give" V PAST @+FV #2 main:>0
//
// The analysis line holds the quoted base form, morphological tags,
// '@'-prefixed lexico-functional tags (carried as opaque text), an
// optional '#n' node id, and the 'label:>regent' dependency pointer.
// Tokens without an analysis line (typically sentence-final
// punctuation) stay outside the tree.  Nuclei without an explicit id
// get the implicit id position+1.
//
// Extension beyond the classic format: a nucleus spanning several
// tokens writes its later tokens as continuation lines '\t&n' sharing
// the id of the analysis line.  The classic format is word-based and
// has no multi-word nuclei.
//
// Canonical form (what write_fdg emits and read_fdg round-trips
// byte-identically): one tab of indentation, single spaces between
// fields, field order surface/base/tags/@tags/#id/dep, '#n' only where
// the id is referenced by a pointer or differs from position+1, LF
// line endings.
#pragma once

#include <string>
#include <string_view>

#include "dg/tree.hpp"

namespace dg {

enum class FdgErrorKind { Syntax, DanglingHead, DuplicateId, MissingAttributes };

class FdgError : public Error {
public:
  FdgError(FdgErrorKind kind, int line, const std::string& message)
      : Error(line > 0 ? "fdg line " + std::to_string(line) + ": " + message
                       : "fdg: " + message),
        kind_(kind),
        line_(line) {}
  FdgErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }

private:
  FdgErrorKind kind_;
  int line_;
};

// Parses one document into a validated tree.  Axiom violations in the
// encoded structure surface as TreeError.
DependencyTree read_fdg(std::string_view text,
                        const FunctionInventory& inventory = FunctionInventory::classic());

// Serializes a tree in canonical form.  Nuclei missing a base form
// throw MissingAttributes unless `lossy`, which substitutes the
// lowercased surface.
std::string write_fdg(const DependencyTree& tree, bool lossy = false);

}  // namespace dg
