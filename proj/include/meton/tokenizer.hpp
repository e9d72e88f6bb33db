#pragma once

#include <string>
#include <vector>

#include "meton/vocab.hpp"

namespace meton {

// A whitespace-delimited word or a single punctuation scalar, with its
// Unicode scalar range in the source text.
struct WordSpan {
  std::string text;
  std::size_t cp_start;
  std::size_t cp_end;
};

// Splits on whitespace, then splits ASCII punctuation into single-scalar
// words. Shared by vocabulary construction and tokenization so both see the
// same word boundaries.
std::vector<WordSpan> segment_words(const std::string& text);

struct TokenizedInput {
  std::vector<int> ids;  // [CLS] pieces... [SEP]
  int target_tok_start = 0;  // i, inclusive, over the framed sequence
  int target_tok_end = 0;    // j, inclusive
  // per-token source scalar range; empty (x,x) for CLS/SEP
  std::vector<std::pair<std::size_t, std::size_t>> alignment;

  int length() const { return static_cast<int>(ids.size()); }
  int target_len() const { return target_tok_end - target_tok_start + 1; }
};

// Tokenizes text with exact char-span -> token-span alignment and CLS/SEP
// framing. The target span must cover whole words; a span boundary strictly
// inside a token raises ValidationError.
TokenizedInput tokenize_align(const std::string& text,
                              std::size_t target_start, std::size_t target_end,
                              const Vocab& vocab);

// Shrinks the framed sequence to at most max_len tokens, keeping the target
// span intact and centering the context window on it (one extra left token on
// ties). Identity when the input already fits. Idempotent.
TokenizedInput truncate_around_span(const TokenizedInput& input, int max_len);

// Surface form of a token sequence with continuation markers stripped;
// test/debug helper.
std::string decode_tokens(const std::vector<int>& ids, int from, int to,
                          const Vocab& vocab);

}  // namespace meton
