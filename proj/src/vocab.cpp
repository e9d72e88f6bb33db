#include "meton/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "meton/tokenizer.hpp"

namespace meton {

const std::vector<std::string>& Vocab::reserved_tokens() {
  static const std::vector<std::string> kReserved = {"[PAD]", "[UNK]", "[CLS]",
                                                     "[SEP]", "X"};
  return kReserved;
}

Vocab::Vocab() {
  for (const auto& t : reserved_tokens()) add(t);
}

const std::string& Vocab::token(int id) const {
  if (id < 0 || id >= size())
    throw ValidationError("vocab: id " + std::to_string(id) + " out of range");
  return id_to_token_[id];
}

int Vocab::id(const std::string& token) const {
  auto it = token_to_id_.find(token);
  return it == token_to_id_.end() ? -1 : it->second;
}

int Vocab::add(const std::string& token) {
  if (token.empty()) throw ValidationError("vocab: empty token");
  if (token_to_id_.count(token))
    throw ValidationError("vocab: duplicate token \"" + token + "\"");
  int new_id = size();
  id_to_token_.push_back(token);
  token_to_id_[token] = new_id;
  std::string_view body = token;
  if (body.rfind(kContinuation, 0) == 0) body.remove_prefix(2);
  max_piece_cp_ = std::max(max_piece_cp_, utf8::length(body));
  return new_id;
}

void Vocab::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  for (const auto& t : id_to_token_) out << t << '\n';
}

Vocab Vocab::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Vocab v;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    if (line_no < static_cast<int>(reserved_tokens().size())) {
      if (line != reserved_tokens()[line_no])
        throw ParseError("vocab file " + path + ": line " +
                         std::to_string(line_no + 1) + " must be reserved token " +
                         reserved_tokens()[line_no]);
    } else {
      v.add(line);
    }
    ++line_no;
  }
  if (line_no < static_cast<int>(reserved_tokens().size()))
    throw ParseError("vocab file " + path + ": missing reserved tokens");
  return v;
}

Vocab build_vocab(const std::vector<Sample>& samples, int size) {
  const int n_reserved = static_cast<int>(Vocab::reserved_tokens().size());
  if (size <= n_reserved)
    throw ValidationError("vocab size " + std::to_string(size) +
                          " must exceed the " + std::to_string(n_reserved) +
                          " reserved tokens");

  // word type -> count, over the same segmentation tokenize_align uses
  std::map<std::string, std::size_t> word_counts;
  for (const Sample& s : samples)
    for (const auto& w : segment_words(s.text))
      ++word_counts[utf8::fold(w.text)];

  // each word as a piece sequence: first scalar bare, the rest ## prefixed
  struct Word {
    std::vector<std::string> pieces;
    std::size_t count;
  };
  std::vector<Word> words;
  std::map<std::string, std::size_t> piece_counts;
  for (const auto& [text, count] : word_counts) {
    Word w;
    w.count = count;
    std::size_t len = utf8::length(text);
    for (std::size_t i = 0; i < len; ++i) {
      std::string piece = utf8::slice(text, i, i + 1);
      if (i > 0) piece = Vocab::kContinuation + piece;
      w.pieces.push_back(piece);
      piece_counts[piece] += count;
    }
    words.push_back(std::move(w));
  }

  Vocab vocab;
  // base inventory by descending frequency, then lexicographic
  std::vector<std::pair<std::string, std::size_t>> base(piece_counts.begin(),
                                                        piece_counts.end());
  std::sort(base.begin(), base.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (const auto& [piece, count] : base) {
    if (vocab.size() >= size) break;
    if (!vocab.contains(piece)) vocab.add(piece);
  }

  // greedy pair merging until the budget is filled or no pair repeats
  while (vocab.size() < size) {
    std::map<std::pair<std::string, std::string>, std::size_t> pair_counts;
    for (const Word& w : words)
      for (std::size_t i = 0; i + 1 < w.pieces.size(); ++i)
        pair_counts[{w.pieces[i], w.pieces[i + 1]}] += w.count;

    std::pair<std::string, std::string> best;
    std::size_t best_count = 0;
    for (const auto& [pair, count] : pair_counts) {
      // only merge pairs whose halves are both in the vocabulary; anything
      // else is unreachable at tokenization time
      if (vocab.contains(pair.first) && vocab.contains(pair.second) &&
          count > best_count) {
        best = pair;
        best_count = count;
      }
    }
    if (best_count == 0) break;

    std::string merged = best.first;
    std::string second = best.second;
    if (second.rfind(Vocab::kContinuation, 0) == 0)
      merged += second.substr(2);
    else
      merged += second;
    if (vocab.contains(merged)) {
      // already present (e.g. via base inventory); rewrite anyway so the pair
      // stops being counted
    } else {
      vocab.add(merged);
    }
    for (Word& w : words) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < w.pieces.size(); ++i) {
        if (i + 1 < w.pieces.size() && w.pieces[i] == best.first &&
            w.pieces[i + 1] == best.second) {
          out.push_back(merged);
          ++i;
        } else {
          out.push_back(w.pieces[i]);
        }
      }
      w.pieces = std::move(out);
    }
  }
  return vocab;
}

}  // namespace meton
