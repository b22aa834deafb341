#include "husr/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace husr {

namespace {

std::string describe(IngestError::Source source, std::size_t line, std::size_t column, const std::string& detail) {
  std::ostringstream out;
  out << (source == IngestError::Source::Sequences ? "sequences" : "utilities");
  if (line != 0) out << ':' << line << ':' << column;
  out << ": " << detail;
  return out.str();
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

bool is_skippable(const std::vector<Token>& tokens) {
  if (tokens.empty()) return true;
  const char first = tokens.front().text.front();
  return first == '#' || first == '%' || first == '@';
}

template <typename Int>
bool parse_unsigned(std::string_view text, Int& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    fn(++line_number, text.substr(pos, end - pos));
    pos = end + 1;
  }
}

struct ItemSite {
  std::size_t line;
  std::size_t column;
  Sid sid;
};

}  // namespace

IngestError::IngestError(Kind kind, Source source, std::size_t line, std::size_t column, const std::string& detail,
                         Sid sid, Item item)
    : std::runtime_error(describe(source, line, column, detail)),
      kind_(kind),
      source_(source),
      line_(line),
      column_(column),
      sid_(sid),
      item_(item) {}

const char* to_string(IngestError::Kind kind) {
  switch (kind) {
    case IngestError::Kind::DuplicateItemInSequence: return "DuplicateItemInSequence";
    case IngestError::Kind::MissingExternalUtility: return "MissingExternalUtility";
    case IngestError::Kind::MalformedLine: return "MalformedLine";
    case IngestError::Kind::NonPositiveQuantityOrUtility: return "NonPositiveQuantityOrUtility";
  }
  return "?";
}

ExternalUtilityTable parse_utilities(std::string_view utility_text) {
  using Kind = IngestError::Kind;
  constexpr auto kSource = IngestError::Source::Utilities;
  ExternalUtilityTable table;
  for_each_line(utility_text, [&](std::size_t line_number, std::string_view line) {
    const auto tokens = tokenize(line);
    if (is_skippable(tokens)) return;
    if (tokens.size() != 2) {
      throw IngestError(Kind::MalformedLine, kSource, line_number, tokens.front().column,
                        "expected 'ITEM UTILITY'");
    }
    std::uint32_t item = 0;
    Utility utility = 0;
    if (!parse_unsigned(tokens[0].text, item) || item == 0) {
      throw IngestError(Kind::MalformedLine, kSource, line_number, tokens[0].column,
                        "invalid item '" + std::string(tokens[0].text) + "'");
    }
    if (!parse_unsigned(tokens[1].text, utility)) {
      throw IngestError(Kind::MalformedLine, kSource, line_number, tokens[1].column,
                        "invalid utility '" + std::string(tokens[1].text) + "'");
    }
    if (utility == 0) {
      throw IngestError(Kind::NonPositiveQuantityOrUtility, kSource, line_number, tokens[1].column,
                        "utility of item " + std::to_string(item) + " must be positive", 0, Item{item});
    }
    if (table.contains(Item{item})) {
      throw IngestError(Kind::MalformedLine, kSource, line_number, tokens[0].column,
                        "item " + std::to_string(item) + " listed twice", 0, Item{item});
    }
    table.set(Item{item}, utility);
  });
  return table;
}

QuantitativeSequenceDatabase parse_database(std::string_view sequence_text, std::string_view utility_text) {
  using Kind = IngestError::Kind;
  constexpr auto kSource = IngestError::Source::Sequences;

  ExternalUtilityTable eu = parse_utilities(utility_text);
  std::vector<Sequence> sequences;
  std::unordered_map<Item, ItemSite> first_site;
  std::unordered_map<Item, std::size_t> seen_in_sequence;  // item -> column

  for_each_line(sequence_text, [&](std::size_t line_number, std::string_view line) {
    const auto tokens = tokenize(line);
    if (is_skippable(tokens)) return;
    Sequence sequence;
    sequence.sid = static_cast<Sid>(sequences.size() + 1);
    seen_in_sequence.clear();
    Itemset current;
    bool terminated = false;

    const auto close_itemset = [&] {
      std::sort(current.begin(), current.end(),
                [](const ItemQuantity& a, const ItemQuantity& b) { return a.item < b.item; });
      sequence.itemsets.push_back(std::move(current));
      current.clear();
    };

    for (const Token& token : tokens) {
      if (terminated) {
        throw IngestError(Kind::MalformedLine, kSource, line_number, token.column, "token after '-2'", sequence.sid);
      }
      if (token.text == "-1") {
        if (current.empty()) {
          throw IngestError(Kind::MalformedLine, kSource, line_number, token.column, "empty itemset", sequence.sid);
        }
        close_itemset();
        continue;
      }
      if (token.text == "-2") {
        if (!current.empty()) close_itemset();
        terminated = true;
        continue;
      }
      const auto colon = token.text.find(':');
      if (colon == std::string_view::npos) {
        throw IngestError(Kind::MalformedLine, kSource, line_number, token.column,
                          "expected ITEM:QTY, '-1' or '-2', got '" + std::string(token.text) + "'", sequence.sid);
      }
      std::uint32_t item = 0;
      Quantity quantity = 0;
      if (!parse_unsigned(token.text.substr(0, colon), item) || item == 0) {
        throw IngestError(Kind::MalformedLine, kSource, line_number, token.column,
                          "invalid item in '" + std::string(token.text) + "'", sequence.sid);
      }
      if (!parse_unsigned(token.text.substr(colon + 1), quantity)) {
        throw IngestError(Kind::MalformedLine, kSource, line_number, token.column + colon + 1,
                          "invalid quantity in '" + std::string(token.text) + "'", sequence.sid, Item{item});
      }
      if (quantity == 0) {
        throw IngestError(Kind::NonPositiveQuantityOrUtility, kSource, line_number, token.column + colon + 1,
                          "quantity of item " + std::to_string(item) + " must be positive", sequence.sid,
                          Item{item});
      }
      if (!seen_in_sequence.emplace(Item{item}, token.column).second) {
        throw IngestError(Kind::DuplicateItemInSequence, kSource, line_number, token.column,
                          "item " + std::to_string(item) + " appears more than once in sequence " +
                              std::to_string(sequence.sid),
                          sequence.sid, Item{item});
      }
      first_site.try_emplace(Item{item}, ItemSite{line_number, token.column, sequence.sid});
      current.push_back({Item{item}, quantity});
    }
    if (!terminated) {
      throw IngestError(Kind::MalformedLine, kSource, line_number, line.size() + 1, "missing '-2' terminator",
                        sequence.sid);
    }
    sequences.push_back(std::move(sequence));
  });

  // Report the earliest item (in file order) lacking a utility.
  const ItemSite* missing_site = nullptr;
  Item missing_item;
  for (const auto& [item, site] : first_site) {
    if (eu.contains(item)) continue;
    if (missing_site == nullptr || std::tie(site.line, site.column) < std::tie(missing_site->line, missing_site->column)) {
      missing_site = &site;
      missing_item = item;
    }
  }
  if (missing_site != nullptr) {
    throw IngestError(Kind::MissingExternalUtility, kSource, missing_site->line, missing_site->column,
                      "no external utility for item " + std::to_string(missing_item.id), missing_site->sid,
                      missing_item);
  }
  return QuantitativeSequenceDatabase(std::move(sequences), std::move(eu));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

QuantitativeSequenceDatabase load_database(const std::filesystem::path& sequence_file,
                                           const std::filesystem::path& utility_file) {
  return parse_database(read_file(sequence_file), read_file(utility_file));
}

void write_database(const QuantitativeSequenceDatabase& db, std::ostream& sequences_out,
                    std::ostream& utilities_out) {
  for (const Sequence& sequence : db.sequences()) {
    for (const Itemset& itemset : sequence.itemsets) {
      for (const auto& [item, quantity] : itemset) sequences_out << item.id << ':' << quantity << ' ';
      sequences_out << "-1 ";
    }
    sequences_out << "-2\n";
  }
  for (Item item : db.items()) utilities_out << item.id << ' ' << db.external_utilities().at(item) << '\n';
}

std::string format_confidence(std::uint64_t support, std::uint64_t antecedent_support) {
  std::uint64_t scaled = 0;  // confidence * 10^4, rounded half up
  if (antecedent_support != 0) {
    const unsigned __int128 numerator = static_cast<unsigned __int128>(support) * 20000 + antecedent_support;
    scaled = static_cast<std::uint64_t>(numerator / (2 * static_cast<unsigned __int128>(antecedent_support)));
  }
  std::string fraction = std::to_string(scaled % 10000);
  fraction.insert(0, 4 - fraction.size(), '0');
  return std::to_string(scaled / 10000) + "." + fraction;
}

std::string format_rule(const SequentialRule& rule) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) out << (i ? " " : "") << rule.antecedent[i].id;
  out << " ==> ";
  for (std::size_t i = 0; i < rule.consequent.size(); ++i) out << (i ? " " : "") << rule.consequent[i].id;
  out << " #SUP: " << rule.support_count << " #CONF: "
      << format_confidence(rule.support_count, rule.antecedent_support_count) << " #UTIL: " << rule.utility;
  return out.str();
}

void write_rules(std::span<const SequentialRule> rules, std::ostream& out) {
  std::vector<const SequentialRule*> ordered;
  ordered.reserve(rules.size());
  for (const SequentialRule& rule : rules) ordered.push_back(&rule);
  std::sort(ordered.begin(), ordered.end(),
            [](const SequentialRule* a, const SequentialRule* b) { return canonical_less(*a, *b); });
  for (const SequentialRule* rule : ordered) out << format_rule(*rule) << '\n';
  if (!out) throw std::runtime_error("failed to write rules");
}

}  // namespace husr
