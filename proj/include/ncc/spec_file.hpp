#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncc/group.hpp"
#include "ncc/quotient_groups.hpp"

namespace ncc {

/// Malformed input. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                           message),
        line_(line), column_(column), message_(message) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Well-formed input that does not describe a group (a line that is not a
/// permutation, a table that fails the group axioms, bad constructor arguments).
class SemanticError : public std::runtime_error {
 public:
  SemanticError(const std::string& message, std::string witness)
      : std::runtime_error(message + " (" + witness + ")"), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// A group definition file. Four formats:
///
///   perm <degree>            one generator per following line, in zero-based
///   (0 1 2)(3 4)             cycle notation; fixed points omitted, "()" for
///                            the identity
///
///   table <order>            followed by <order> rows of <order> entries
///
///   construct <name> <args>  catalog constructor, e.g. "construct dihedral 8"
///
///   quat:p=5,k=3,variant=PGL1,i=1
///
/// Blank lines and lines starting with '#' are ignored.
struct GroupSpecFile {
  enum class Format { perm, table, construct, quat };

  Format format = Format::perm;
  std::size_t size = 0;                   ///< degree (perm) or order (table)
  std::vector<Permutation> generators;    ///< perm
  std::vector<Elem> table;                ///< table, row-major
  std::string constructor;                ///< construct
  std::vector<std::uint64_t> arguments;   ///< construct
  QuotientGroupSpec quat;                 ///< quat

  static GroupSpecFile parse(const std::string& text);
  /// Canonical text; parse(serialize()) reproduces this object.
  std::string serialize() const;
  FiniteGroup build() const;
};

/// Cycle notation for one permutation, cycles ordered by least point.
std::string format_cycles(const Permutation& perm);

}  // namespace ncc
