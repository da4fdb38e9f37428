#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relconv/convolution.hpp"
#include "relconv/error.hpp"
#include "relconv/generators.hpp"
#include "relconv/haar.hpp"
#include "relconv/relational_groupoid.hpp"

namespace relconv {

/// Malformed definition file. Syntax errors carry a 1-based line and column;
/// semantic errors carry the JSON path of the offending value and line 0.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column, std::string path = {})
      : Error(what), line_(line), column_(column), path_(std::move(path)) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

struct GroupSection {
  /// table[i][j] is the label of carrier[i] * carrier[j].
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> normal_subgroup;
};

/// A parsed definition file:
///
///   carrier    list of distinct labels
///   L          list of label triples          (with I)
///   group      {"table", "normal_subgroup"}   (instead of L; I optional)
///   I          list of label pairs, one per carrier element
///   haar       {g: {h: {k: "p/q"}}}           optional
///   functions  {name: {label: ["re", "im"]}}  optional
struct Definition {
  RelationalGroupoid structure;
  std::optional<GroupSection> group;
  std::optional<RelationalHaarSystem> haar;
  /// Sorted by name.
  std::vector<std::pair<std::string, AlgebraElement>> functions;

  const FiniteSet& carrier() const { return structure.carrier(); }
  const AlgebraElement* function(std::string_view name) const;
};

Definition parse_definition(std::string_view text, std::size_t carrier_limit = kDefaultCarrierLimit);
/// Reads and parses a file; an unreadable file is a ParseError at line 0.
Definition load_definition(const std::string& path, std::size_t carrier_limit = kDefaultCarrierLimit);

/// Canonical form: keys sorted, L sorted by index, fractions reduced, zero
/// weights and zero function values dropped, two-space indentation and a
/// trailing newline.
std::string serialize(const Definition& def);

Definition definition_from(const CorpusEntry& entry);

}  // namespace relconv
