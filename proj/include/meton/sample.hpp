#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meton/error.hpp"
#include "meton/utf8.hpp"

namespace meton {

enum class Label { Literal, Metonymic };

inline const char* label_name(Label l) {
  return l == Label::Literal ? "literal" : "metonymic";
}

inline Label parse_label(const std::string& s) {
  if (s == "literal") return Label::Literal;
  if (s == "metonymic") return Label::Metonymic;
  throw ParseError("unknown label string: \"" + s + "\"");
}

// The universal corpus record: one sentence, one potentially metonymic
// mention given as a character span (Unicode scalar offsets, end exclusive).
struct Sample {
  std::string id;
  std::string text;
  std::size_t target_start = 0;
  std::size_t target_end = 0;
  Label label = Label::Literal;
  std::optional<std::string> fine_label;
  std::string pmw_key;  // case-folded target surface, used for lexical splits
  std::string dataset;

  std::string target_surface() const {
    return utf8::slice(text, target_start, target_end);
  }

  // Span and key invariants. Enforced at every ingestion boundary; derived
  // samples produced by transforms keep the original pmw_key on purpose and
  // are not re-validated.
  void validate() const {
    std::size_t n = utf8::length(text);
    if (!(target_start < target_end && target_end <= n))
      throw ValidationError("sample " + id + ": target span [" +
                            std::to_string(target_start) + "," +
                            std::to_string(target_end) +
                            ") invalid for text of length " + std::to_string(n));
    std::string surface = target_surface();
    if (surface.empty() || utf8::is_ascii_space(surface.front()) ||
        utf8::is_ascii_space(surface.back()))
      throw ValidationError("sample " + id +
                            ": target span points at whitespace or is empty");
    if (pmw_key != utf8::fold(surface))
      throw ValidationError("sample " + id + ": pmw_key \"" + pmw_key +
                            "\" does not match case-folded target \"" +
                            utf8::fold(surface) + "\"");
  }
};

struct DatasetStats {
  std::size_t n_literal = 0;
  std::size_t n_metonymic = 0;
  std::size_t n_total = 0;
  std::size_t n_unique_pmw = 0;
  double avg_doc_length_words = 0.0;
};

enum class SplitKind { Fixed, Lexical, KFold };

struct SplitSpec {
  SplitKind kind = SplitKind::Fixed;
  std::vector<double> fractions;  // Fixed/Lexical
  std::size_t k = 0;              // KFold
  std::uint64_t seed = 0;

  void validate() const;
};

}  // namespace meton
