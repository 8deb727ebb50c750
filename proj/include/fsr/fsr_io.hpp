#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fsr/subdivision.hpp"

namespace fsr {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Contents of a .fsr file: a subdivision rule, or a standalone complex when
/// the file has no refined block.
struct FsrDocument {
  std::string name;
  std::optional<SubdivisionRule> rule;
  std::optional<Complex> complex;

  bool is_rule() const { return rule.has_value(); }
  /// The base complex of a rule or the standalone complex.
  const Complex& base() const;
};

/// Line-oriented grammar:
///   fsr NAME
///   complex base | complex refined
///   vertex ID [marked]
///   edge ID V1 V2
///   tile ID E1+, E2-, ...
///   carrier CELL -> CELL
///   map tile SUB -> BASE offset K [reversed]
///   map edge SUB -> BASE [reversed]
///   map vertex SUB -> BASE
/// with `#` comments. Throws ParseError at the first violation.
FsrDocument parse_fsr(std::string_view text);
FsrDocument load_fsr(const std::string& path);

/// Canonical text: fixed block order, cells sorted by id, tile words as stored.
std::string serialize(const SubdivisionRule& rule);
std::string serialize_complex(const std::string& name, const Complex& c);
std::string serialize(const FsrDocument& doc);

/// A standalone complex with boundary derived from its one-sided edges.
/// Throws when those edges do not close up into one cycle.
DiskComplex as_disk(const Complex& c);

}  // namespace fsr
