#pragma once

// Text formats for sequence databases, external utilities and mined rules.
//
// Sequence file: one sequence per line, items written ITEM:QTY, itemsets closed
// by "-1", the sequence closed by "-2". Blank lines and lines starting with
// '#', '%' or '@' are skipped. Sequences get sids 1, 2, ... in file order.
//
//   1:1 -1 2:2 -1 3:1 7:1 -1 -2
//
// Utility file: one "ITEM UTILITY" pair per line.
//
// Rule file: one rule per line, canonical order.
//
//   1 ==> 3 7 #SUP: 2 #CONF: 1.0000 #UTIL: 14

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "husr/core.hpp"

namespace husr {

class IngestError : public std::runtime_error {
 public:
  enum class Kind {
    DuplicateItemInSequence,
    MissingExternalUtility,
    MalformedLine,
    NonPositiveQuantityOrUtility,
  };
  enum class Source { Sequences, Utilities };

  IngestError(Kind kind, Source source, std::size_t line, std::size_t column, const std::string& detail,
              Sid sid = 0, Item item = {});

  Kind kind() const noexcept { return kind_; }
  Source source() const noexcept { return source_; }
  /// 1-based; 0 when the error is not tied to a position.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  Sid sid() const noexcept { return sid_; }
  Item item() const noexcept { return item_; }

 private:
  Kind kind_;
  Source source_;
  std::size_t line_;
  std::size_t column_;
  Sid sid_;
  Item item_;
};

const char* to_string(IngestError::Kind kind);

ExternalUtilityTable parse_utilities(std::string_view utility_text);
QuantitativeSequenceDatabase parse_database(std::string_view sequence_text, std::string_view utility_text);
QuantitativeSequenceDatabase load_database(const std::filesystem::path& sequence_file,
                                           const std::filesystem::path& utility_file);

/// Writes the database in the sequence / utility grammars. Only utilities of
/// items that occur in the database are written.
void write_database(const QuantitativeSequenceDatabase& db, std::ostream& sequences_out, std::ostream& utilities_out);

/// Confidence support/antecedent_support printed with four decimals, rounded half up.
std::string format_confidence(std::uint64_t support, std::uint64_t antecedent_support);
std::string format_rule(const SequentialRule& rule);
/// Writes rules in canonical order regardless of input order.
void write_rules(std::span<const SequentialRule> rules, std::ostream& out);

std::string read_file(const std::filesystem::path& path);

}  // namespace husr
