#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "meton/sample.hpp"

namespace meton {

// Subword vocabulary with wordpiece-style "##" continuation pieces. Reserved
// ids sit at the front in fixed order; the mask word is the single token "X"
// and is matched case-insensitively as a whole word at tokenization time.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;
  static constexpr int kSep = 3;
  static constexpr int kMaskWord = 4;
  static constexpr const char* kContinuation = "##";

  static const std::vector<std::string>& reserved_tokens();

  Vocab();  // reserved tokens only

  int size() const { return static_cast<int>(id_to_token_.size()); }
  const std::string& token(int id) const;
  // -1 when absent
  int id(const std::string& token) const;
  bool contains(const std::string& token) const { return id(token) >= 0; }
  std::size_t max_piece_length() const { return max_piece_cp_; }

  // Appends a non-reserved token; rejects duplicates.
  int add(const std::string& token);

  void save(const std::string& path) const;
  static Vocab load(const std::string& path);

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;
  std::size_t max_piece_cp_ = 1;
};

// Greedy frequency-based subword merging over the case-folded training text.
// Deterministic: ties break lexicographically. size counts reserved tokens.
Vocab build_vocab(const std::vector<Sample>& samples, int size);

}  // namespace meton
