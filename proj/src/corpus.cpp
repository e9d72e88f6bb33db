#include "meton/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "meton/rng.hpp"

namespace meton {

using nlohmann::json;
using nlohmann::ordered_json;

void SplitSpec::validate() const {
  if (kind == SplitKind::KFold) {
    if (k < 2) throw ValidationError("split: k must be >= 2");
    return;
  }
  if (fractions.size() < 2)
    throw ValidationError("split: need at least two fractions");
  double sum = 0.0;
  for (double f : fractions) {
    if (f <= 0.0) throw ValidationError("split: fractions must be positive");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("split: fractions sum to " + std::to_string(sum) +
                          ", expected 1.0");
}

SourceFormat parse_source_format(const std::string& name) {
  if (name == "semeval-xml" || name == "semeval") return SourceFormat::SemEvalXml;
  if (name == "relocar-tsv" || name == "relocar") return SourceFormat::RelocarTsv;
  if (name == "conll-col" || name == "conll") return SourceFormat::ConllCol;
  if (name == "gwn-json" || name == "gwn") return SourceFormat::GwnJson;
  if (name == "wimcor-json" || name == "wimcor") return SourceFormat::WimcorJson;
  throw ParseError("unknown source format: \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// canonical format

std::string canonical_line(const Sample& s) {
  ordered_json j;
  j["id"] = s.id;
  j["text"] = s.text;
  j["target_start"] = s.target_start;
  j["target_end"] = s.target_end;
  j["label"] = label_name(s.label);
  if (s.fine_label) j["fine_label"] = *s.fine_label;
  j["dataset"] = s.dataset;
  return j.dump();
}

Sample parse_canonical_line(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
  Sample s;
  try {
    s.id = j.at("id").get<std::string>();
    s.text = j.at("text").get<std::string>();
    s.target_start = j.at("target_start").get<std::size_t>();
    s.target_end = j.at("target_end").get<std::size_t>();
    s.label = parse_label(j.at("label").get<std::string>());
    if (j.contains("fine_label")) s.fine_label = j["fine_label"].get<std::string>();
    s.dataset = j.at("dataset").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
  // pmw_key is not serialized; it is always recomputed from the span.
  if (s.target_start < s.target_end && s.target_end <= utf8::length(s.text))
    s.pmw_key = utf8::fold(s.target_surface());
  s.validate();
  return s;
}

void for_each_canonical(const std::string& path,
                        const std::function<void(Sample&&)>& sink) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    sink(parse_canonical_line(line, line_no));
  }
}

std::vector<Sample> load_canonical(const std::string& path) {
  std::vector<Sample> out;
  for_each_canonical(path, [&](Sample&& s) { out.push_back(std::move(s)); });
  return out;
}

void write_canonical(const std::vector<Sample>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  for (const Sample& s : samples) out << canonical_line(s) << '\n';
}

// ---------------------------------------------------------------------------
// converters

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string xml_unescape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    auto take = [&](std::string_view ent, char c) {
      if (s.compare(i, ent.size(), ent) == 0) {
        out += c;
        i += ent.size() - 1;
        return true;
      }
      return false;
    };
    if (!take("&amp;", '&') && !take("&lt;", '<') && !take("&gt;", '>') &&
        !take("&quot;", '"') && !take("&apos;", '\''))
      out += s[i];
  }
  return out;
}

std::string collapse_ws(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (utf8::is_ascii_space(c)) {
      pending = !out.empty();
    } else {
      if (pending) out += ' ';
      pending = false;
      out += c;
    }
  }
  return out;
}

std::string attr_value(const std::string& tag, const std::string& name) {
  std::string needle = name + "=\"";
  auto p = tag.find(needle);
  if (p == std::string::npos) return {};
  p += needle.size();
  auto q = tag.find('"', p);
  if (q == std::string::npos) return {};
  return xml_unescape(tag.substr(p, q - p));
}

// SemEval-style XML. Assumed schema:
//   <samples> <sample id="..." reading="literal|metonymic" [pattern="..."]>
//     text with the mention wrapped as <pmw>surface</pmw>
//   </sample> ... </samples>
// Whitespace inside a sample is collapsed to single spaces before offsets are
// computed. Exactly one <pmw> element per sample.
std::vector<Sample> convert_semeval_xml(const std::string& path) {
  std::string body = read_file(path);
  std::vector<Sample> out;
  std::size_t pos = 0, index = 0;
  while (true) {
    auto open = body.find("<sample", pos);
    if (open == std::string::npos) break;
    auto open_end = body.find('>', open);
    auto close = body.find("</sample>", open);
    if (open_end == std::string::npos || close == std::string::npos ||
        open_end > close)
      throw ParseError("semeval-xml: unterminated <sample> at record " +
                       std::to_string(index));
    std::string tag = body.substr(open, open_end - open + 1);
    std::string inner = body.substr(open_end + 1, close - open_end - 1);
    pos = close + 9;

    auto pmw_open = inner.find("<pmw>");
    auto pmw_close = inner.find("</pmw>");
    if (pmw_open == std::string::npos || pmw_close == std::string::npos ||
        pmw_close < pmw_open)
      throw ParseError("semeval-xml: record " + std::to_string(index) +
                       " has no <pmw> element");

    std::string before = collapse_ws(xml_unescape(inner.substr(0, pmw_open)));
    std::string surface =
        collapse_ws(xml_unescape(inner.substr(pmw_open + 5, pmw_close - pmw_open - 5)));
    std::string after = collapse_ws(xml_unescape(inner.substr(pmw_close + 6)));
    if (surface.empty())
      throw ParseError("semeval-xml: record " + std::to_string(index) +
                       " has empty <pmw>");

    Sample s;
    s.id = attr_value(tag, "id");
    if (s.id.empty()) s.id = "semeval:" + std::to_string(index);
    std::string reading = attr_value(tag, "reading");
    if (reading != "literal" && reading != "metonymic")
      throw ParseError("semeval-xml: record " + std::to_string(index) +
                       ": unknown reading \"" + reading + "\"");
    s.label = parse_label(reading);
    std::string pattern = attr_value(tag, "pattern");
    if (!pattern.empty()) s.fine_label = pattern;

    s.text = before.empty() ? surface : before + " " + surface;
    s.target_start = before.empty() ? 0 : utf8::length(before) + 1;
    s.target_end = s.target_start + utf8::length(surface);
    if (!after.empty()) s.text += " " + after;
    s.pmw_key = utf8::fold(surface);
    s.dataset = "semeval";
    s.validate();
    out.push_back(std::move(s));
    ++index;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> word_ranges(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t cp = 0;
  bool in_word = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char b = static_cast<unsigned char>(text[i]);
    if (utf8::is_continuation(b)) continue;
    if (utf8::is_ascii_space(text[i])) {
      if (in_word) ranges.emplace_back(start, cp);
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      start = cp;
    }
    ++cp;
  }
  if (in_word) ranges.emplace_back(start, cp);
  return ranges;
}

// ReLocaR-style TSV. Assumed schema, one record per line:
//   id <TAB> label <TAB> word_start <TAB> word_end <TAB> sentence
// word_start/word_end index whitespace tokens of the sentence, end exclusive.
std::vector<Sample> convert_relocar_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<Sample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t p = 0;
    while (true) {
      auto t = line.find('\t', p);
      cols.push_back(line.substr(p, t == std::string::npos ? t : t - p));
      if (t == std::string::npos) break;
      p = t + 1;
    }
    if (cols.size() != 5)
      throw ParseError("relocar-tsv: line " + std::to_string(line_no) + ": expected 5 columns, got " +
                       std::to_string(cols.size()));
    Sample s;
    s.id = cols[0];
    s.label = parse_label(cols[1]);
    std::size_t w0, w1;
    try {
      w0 = std::stoul(cols[2]);
      w1 = std::stoul(cols[3]);
    } catch (const std::exception&) {
      throw ParseError("relocar-tsv: line " + std::to_string(line_no) +
                       ": bad word index");
    }
    s.text = cols[4];
    auto words = word_ranges(s.text);
    if (!(w0 < w1 && w1 <= words.size()))
      throw ParseError("relocar-tsv: line " + std::to_string(line_no) +
                       ": word range [" + cols[2] + "," + cols[3] +
                       ") out of bounds for " + std::to_string(words.size()) +
                       " words");
    s.target_start = words[w0].first;
    s.target_end = words[w1 - 1].second;
    s.pmw_key = utf8::fold(s.target_surface());
    s.dataset = "relocar";
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

// CoNLL-style column format. Assumed schema: sentence blocks separated by
// blank lines; each block starts with "#id <id> <label>" followed by one
// "token<TAB>tag" line per token, tag O or TARG; TARG tokens are contiguous.
// The sentence is the tokens joined by single spaces.
std::vector<Sample> convert_conll_col(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<Sample> out;
  std::string line;
  std::size_t record = 0;

  std::string id, label;
  std::vector<std::string> tokens;
  std::vector<bool> is_target;
  bool in_block = false;

  auto flush = [&]() {
    if (!in_block) return;
    if (tokens.empty())
      throw ParseError("conll-col: record " + std::to_string(record) +
                       " has no tokens");
    Sample s;
    s.id = id;
    s.label = parse_label(label);
    std::size_t cp = 0;
    std::size_t t0 = std::string::npos, t1 = std::string::npos;
    bool target_closed = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) {
        s.text += ' ';
        ++cp;
      }
      std::size_t len = utf8::length(tokens[i]);
      if (is_target[i]) {
        if (target_closed)
          throw ParseError("conll-col: record " + std::to_string(record) +
                           ": TARG tokens are not contiguous");
        if (t0 == std::string::npos) t0 = cp;
        t1 = cp + len;
      } else if (t0 != std::string::npos) {
        target_closed = true;
      }
      s.text += tokens[i];
      cp += len;
    }
    if (t0 == std::string::npos)
      throw ParseError("conll-col: record " + std::to_string(record) +
                       " has no TARG token");
    s.target_start = t0;
    s.target_end = t1;
    s.pmw_key = utf8::fold(s.target_surface());
    s.dataset = "conll";
    s.validate();
    out.push_back(std::move(s));
    ++record;
    tokens.clear();
    is_target.clear();
    in_block = false;
  };

  while (std::getline(in, line)) {
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.rfind("#id ", 0) == 0) {
      flush();
      std::istringstream ss(line.substr(4));
      if (!(ss >> id >> label))
        throw ParseError("conll-col: record " + std::to_string(record) +
                         ": bad #id header");
      in_block = true;
      continue;
    }
    if (!in_block)
      throw ParseError("conll-col: record " + std::to_string(record) +
                       ": token line before #id header");
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("conll-col: record " + std::to_string(record) +
                       ": token line without tag column");
    std::string tok = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    if (tag != "O" && tag != "TARG")
      throw ParseError("conll-col: record " + std::to_string(record) +
                       ": unknown tag \"" + tag + "\"");
    tokens.push_back(tok);
    is_target.push_back(tag == "TARG");
  }
  flush();
  return out;
}

// GWN-style JSON lines. Assumed schema per line:
//   {"id": ..., "text": ..., "start": n, "end": n, "annotation": ...}
// annotation "literal" maps to Literal; "metonymic" and "mixed" map to
// Metonymic; the associative categories demonym/homonym/modifier map to
// Metonymic with the category kept as fine_label.
std::vector<Sample> convert_gwn_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<Sample> out;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      Sample s;
      s.id = j.at("id").get<std::string>();
      s.text = j.at("text").get<std::string>();
      s.target_start = j.at("start").get<std::size_t>();
      s.target_end = j.at("end").get<std::size_t>();
      std::string ann = j.at("annotation").get<std::string>();
      if (ann == "literal") {
        s.label = Label::Literal;
      } else if (ann == "metonymic" || ann == "mixed") {
        s.label = Label::Metonymic;
      } else if (ann == "demonym" || ann == "homonym" || ann == "modifier") {
        s.label = Label::Metonymic;
        s.fine_label = ann;
      } else {
        throw ParseError("gwn-json: record " + std::to_string(record) +
                         ": unknown annotation \"" + ann + "\"");
      }
      s.pmw_key = utf8::fold(s.target_surface());
      s.dataset = "gwn";
      s.validate();
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ParseError("gwn-json: record " + std::to_string(record) + ": " +
                       e.what());
    }
    ++record;
  }
  return out;
}

// WiMCor-style JSON lines, streamed. Assumed schema per line:
//   {"id": ..., "sentence": ..., "begin": n, "end": n, "label": "LIT"|"MET"}
std::vector<Sample> convert_wimcor_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<Sample> out;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      Sample s;
      s.id = j.at("id").get<std::string>();
      s.text = j.at("sentence").get<std::string>();
      s.target_start = j.at("begin").get<std::size_t>();
      s.target_end = j.at("end").get<std::size_t>();
      std::string lab = j.at("label").get<std::string>();
      if (lab == "LIT")
        s.label = Label::Literal;
      else if (lab == "MET")
        s.label = Label::Metonymic;
      else
        throw ParseError("wimcor-json: record " + std::to_string(record) +
                         ": unknown label \"" + lab + "\"");
      s.pmw_key = utf8::fold(s.target_surface());
      s.dataset = "wimcor";
      s.validate();
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ParseError("wimcor-json: record " + std::to_string(record) + ": " +
                       e.what());
    }
    ++record;
  }
  return out;
}

}  // namespace

std::vector<Sample> convert_dataset(const std::string& path, SourceFormat format) {
  switch (format) {
    case SourceFormat::SemEvalXml: return convert_semeval_xml(path);
    case SourceFormat::RelocarTsv: return convert_relocar_tsv(path);
    case SourceFormat::ConllCol: return convert_conll_col(path);
    case SourceFormat::GwnJson: return convert_gwn_json(path);
    case SourceFormat::WimcorJson: return convert_wimcor_json(path);
  }
  throw ParseError("unhandled source format");
}

// ---------------------------------------------------------------------------
// statistics

DatasetStats compute_stats(const std::vector<Sample>& samples) {
  DatasetStats st;
  std::unordered_set<std::string> keys;
  double words = 0.0;
  for (const Sample& s : samples) {
    if (s.label == Label::Literal)
      ++st.n_literal;
    else
      ++st.n_metonymic;
    keys.insert(s.pmw_key);
    words += static_cast<double>(utf8::word_count(s.text));
  }
  st.n_total = samples.size();
  st.n_unique_pmw = keys.size();
  st.avg_doc_length_words = samples.empty() ? 0.0 : words / samples.size();
  return st;
}

std::string stats_csv_header() {
  return "dataset,n_literal,n_metonymic,n_total,n_unique_pmw,avg_len";
}

std::string stats_csv_row(const std::string& dataset, const DatasetStats& st) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", st.avg_doc_length_words);
  return dataset + "," + std::to_string(st.n_literal) + "," +
         std::to_string(st.n_metonymic) + "," + std::to_string(st.n_total) +
         "," + std::to_string(st.n_unique_pmw) + "," + buf;
}

// ---------------------------------------------------------------------------
// splits

namespace {

std::vector<std::size_t> fraction_sizes(std::size_t n,
                                        const std::vector<double>& fractions) {
  // largest remainder apportionment, ties to the lower index
  std::vector<std::size_t> sizes(fractions.size());
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    double exact = fractions[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(exact);
    assigned += sizes[i];
    rem.emplace_back(exact - static_cast<double>(sizes[i]), i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[rem[i].second];
  return sizes;
}

std::vector<std::vector<Sample>> split_fixed(const std::vector<Sample>& samples,
                                             const SplitSpec& spec) {
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(order);
  auto sizes = fraction_sizes(samples.size(), spec.fractions);
  std::vector<std::vector<Sample>> parts(spec.fractions.size());
  std::size_t at = 0;
  for (std::size_t p = 0; p < sizes.size(); ++p)
    for (std::size_t i = 0; i < sizes[p]; ++i)
      parts[p].push_back(samples[order[at++]]);
  return parts;
}

std::vector<std::vector<Sample>> split_kfold(const std::vector<Sample>& samples,
                                             const SplitSpec& spec) {
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(order);
  std::vector<std::vector<Sample>> folds(spec.k);
  for (std::size_t i = 0; i < order.size(); ++i)
    folds[i % spec.k].push_back(samples[order[i]]);
  return folds;
}

std::vector<std::vector<Sample>> split_lexical(const std::vector<Sample>& samples,
                                               const SplitSpec& spec) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < samples.size(); ++i)
    groups[samples[i].pmw_key].push_back(i);
  if (groups.size() < spec.fractions.size())
    throw ValidationError("lexical split: " + std::to_string(groups.size()) +
                          " distinct pmw_keys cannot fill " +
                          std::to_string(spec.fractions.size()) + " parts");

  // descending frequency, key order breaking ties; the seed only perturbs the
  // order of equal-frequency keys so different seeds can give different
  // (still valid) partitions
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (const auto& [k, v] : groups) keys.emplace_back(k, v.size());
  Rng rng(spec.seed);
  std::vector<std::uint64_t> salt(keys.size());
  for (auto& x : salt) x = rng.next();
  std::vector<std::size_t> key_order(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) key_order[i] = i;
  std::sort(key_order.begin(), key_order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a].second != keys[b].second) return keys[a].second > keys[b].second;
    return salt[a] < salt[b];
  });

  double n = static_cast<double>(samples.size());
  std::vector<double> target(spec.fractions.size());
  for (std::size_t p = 0; p < target.size(); ++p) target[p] = spec.fractions[p] * n;
  std::vector<std::size_t> fill(target.size(), 0);
  std::vector<std::vector<std::size_t>> assigned(target.size());

  for (std::size_t ki : key_order) {
    // largest remaining deficit wins; for equal fractions this is the
    // currently-smallest part
    std::size_t best = 0;
    double best_deficit = target[0] - static_cast<double>(fill[0]);
    for (std::size_t p = 1; p < target.size(); ++p) {
      double d = target[p] - static_cast<double>(fill[p]);
      if (d > best_deficit + 1e-12) {
        best = p;
        best_deficit = d;
      }
    }
    assigned[best].push_back(ki);
    fill[best] += keys[ki].second;
  }

  double tolerance = std::max(1.0, 0.02 * n);
  for (std::size_t p = 0; p < target.size(); ++p) {
    if (std::abs(static_cast<double>(fill[p]) - target[p]) > tolerance) {
      // name the most frequent key in the overfull part
      std::string dominating;
      std::size_t freq = 0;
      for (std::size_t ki : assigned[p])
        if (keys[ki].second > freq) {
          freq = keys[ki].second;
          dominating = keys[ki].first;
        }
      throw ValidationError(
          "lexical split infeasible: part " + std::to_string(p) + " holds " +
          std::to_string(fill[p]) + " samples against target " +
          std::to_string(target[p]) + " (dominating pmw_key \"" + dominating +
          "\")");
    }
  }

  std::vector<std::vector<Sample>> parts(target.size());
  for (std::size_t p = 0; p < target.size(); ++p) {
    std::vector<std::size_t> idx;
    for (std::size_t ki : assigned[p])
      for (std::size_t i : groups[keys[ki].first]) idx.push_back(i);
    std::sort(idx.begin(), idx.end());  // preserve corpus order within a part
    for (std::size_t i : idx) parts[p].push_back(samples[i]);
  }
  return parts;
}

}  // namespace

std::vector<std::vector<Sample>> split(const std::vector<Sample>& samples,
                                       const SplitSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case SplitKind::Fixed: return split_fixed(samples, spec);
    case SplitKind::Lexical: return split_lexical(samples, spec);
    case SplitKind::KFold: return split_kfold(samples, spec);
  }
  throw ValidationError("unhandled split kind");
}

}  // namespace meton
