#include "meton/tokenizer.hpp"

#include <algorithm>
#include <cctype>

namespace meton {

namespace {

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<WordSpan> segment_words(const std::string& text) {
  std::vector<WordSpan> words;
  std::string current;
  std::size_t cp = 0, start = 0;
  auto flush = [&](std::size_t end_cp) {
    if (!current.empty()) {
      words.push_back({current, start, end_cp});
      current.clear();
    }
  };
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b = static_cast<unsigned char>(text[i]);
    std::size_t char_len = 1;
    while (i + char_len < text.size() &&
           utf8::is_continuation(static_cast<unsigned char>(text[i + char_len])))
      ++char_len;
    if (b < 0x80 && utf8::is_ascii_space(text[i])) {
      flush(cp);
    } else if (b < 0x80 && is_ascii_punct(text[i])) {
      flush(cp);
      words.push_back({std::string(1, text[i]), cp, cp + 1});
    } else {
      if (current.empty()) start = cp;
      current.append(text, i, char_len);
    }
    i += char_len;
    ++cp;
  }
  flush(cp);
  return words;
}

namespace {

struct Piece {
  int id;
  std::size_t cp_start;
  std::size_t cp_end;
};

// Greedy longest-match wordpiece split of one folded word. Falls back to a
// single UNK over the whole word when any position has no matching piece.
void append_word_pieces(const WordSpan& word, const Vocab& vocab,
                        std::vector<Piece>& out) {
  std::string folded = utf8::fold(word.text);
  if (folded == "x") {
    out.push_back({Vocab::kMaskWord, word.cp_start, word.cp_end});
    return;
  }
  std::size_t len = utf8::length(folded);
  std::vector<Piece> pieces;
  std::size_t at = 0;
  while (at < len) {
    std::size_t longest = std::min(vocab.max_piece_length(), len - at);
    int found = -1;
    std::size_t found_len = 0;
    for (std::size_t take = longest; take >= 1; --take) {
      std::string cand = utf8::slice(folded, at, at + take);
      if (at > 0) cand = Vocab::kContinuation + cand;
      int id = vocab.id(cand);
      if (id >= 0) {
        found = id;
        found_len = take;
        break;
      }
    }
    if (found < 0) {
      out.push_back({Vocab::kUnk, word.cp_start, word.cp_end});
      return;
    }
    pieces.push_back({found, word.cp_start + at, word.cp_start + at + found_len});
    at += found_len;
  }
  out.insert(out.end(), pieces.begin(), pieces.end());
}

}  // namespace

TokenizedInput tokenize_align(const std::string& text,
                              std::size_t target_start, std::size_t target_end,
                              const Vocab& vocab) {
  std::size_t text_len = utf8::length(text);
  if (!(target_start < target_end && target_end <= text_len))
    throw ValidationError("tokenize: target span out of bounds");

  std::vector<Piece> pieces;
  for (const WordSpan& w : segment_words(text))
    append_word_pieces(w, vocab, pieces);

  int first = -1, last = -1;
  for (std::size_t t = 0; t < pieces.size(); ++t) {
    const Piece& p = pieces[t];
    bool overlaps = p.cp_start < target_end && target_start < p.cp_end;
    if (!overlaps) {
      if (first >= 0 && last < 0) last = static_cast<int>(t) - 1;
      continue;
    }
    bool inside = target_start <= p.cp_start && p.cp_end <= target_end;
    if (!inside)
      throw ValidationError(
          "tokenize: target boundary falls inside token covering [" +
          std::to_string(p.cp_start) + "," + std::to_string(p.cp_end) +
          "); converters must supply word-boundary spans");
    if (first < 0) first = static_cast<int>(t);
    if (last >= 0)
      throw ValidationError("tokenize: target tokens are not contiguous");
  }
  if (first >= 0 && last < 0) last = static_cast<int>(pieces.size()) - 1;
  if (first < 0)
    throw ValidationError("tokenize: target span covers no tokens");

  TokenizedInput out;
  out.ids.reserve(pieces.size() + 2);
  out.alignment.reserve(pieces.size() + 2);
  out.ids.push_back(Vocab::kCls);
  out.alignment.emplace_back(0, 0);
  for (const Piece& p : pieces) {
    out.ids.push_back(p.id);
    out.alignment.emplace_back(p.cp_start, p.cp_end);
  }
  out.ids.push_back(Vocab::kSep);
  out.alignment.emplace_back(text_len, text_len);
  out.target_tok_start = first + 1;  // account for CLS
  out.target_tok_end = last + 1;
  return out;
}

TokenizedInput truncate_around_span(const TokenizedInput& input, int max_len) {
  int n = input.length();
  if (n <= max_len) return input;
  int d = input.target_len();
  if (d + 2 > max_len)
    throw ValidationError("truncate: target of " + std::to_string(d) +
                          " tokens cannot fit in max_len " +
                          std::to_string(max_len));

  int interior = n - 2;               // tokens between CLS and SEP
  int window = max_len - 2;           // interior budget
  int context = window - d;
  int i0 = input.target_tok_start - 1;  // 0-based over interior tokens
  int j0 = input.target_tok_end - 1;
  int left = (context + 1) / 2;  // left-biased on odd context
  int lo = i0 - left;
  if (lo < 0) lo = 0;
  if (lo + window > interior) lo = interior - window;
  (void)j0;

  TokenizedInput out;
  out.ids.reserve(max_len);
  out.alignment.reserve(max_len);
  out.ids.push_back(Vocab::kCls);
  out.alignment.push_back(input.alignment.front());
  for (int t = lo; t < lo + window; ++t) {
    out.ids.push_back(input.ids[t + 1]);
    out.alignment.push_back(input.alignment[t + 1]);
  }
  out.ids.push_back(Vocab::kSep);
  out.alignment.push_back(input.alignment.back());
  out.target_tok_start = input.target_tok_start - lo;
  out.target_tok_end = input.target_tok_end - lo;
  return out;
}

std::string decode_tokens(const std::vector<int>& ids, int from, int to,
                          const Vocab& vocab) {
  std::string out;
  for (int t = from; t <= to; ++t) {
    std::string tok = vocab.token(ids[t]);
    if (tok.rfind(Vocab::kContinuation, 0) == 0) {
      out += tok.substr(2);
    } else {
      if (!out.empty()) out += ' ';
      out += tok;
    }
  }
  return out;
}

}  // namespace meton
