#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "meton/sample.hpp"

namespace meton {

enum class SourceFormat { SemEvalXml, RelocarTsv, ConllCol, GwnJson, WimcorJson };

SourceFormat parse_source_format(const std::string& name);

// Canonical line-delimited record format: one JSON object per line with keys
// id, text, target_start, target_end, label, fine_label (optional), dataset.
// Offsets are Unicode scalar-value indices.
std::vector<Sample> load_canonical(const std::string& path);
void write_canonical(const std::vector<Sample>& samples, const std::string& path);
std::string canonical_line(const Sample& s);
Sample parse_canonical_line(const std::string& line, std::size_t line_no);

// Streaming variant for WiMCor-scale corpora; invokes sink per record without
// materializing the whole file.
void for_each_canonical(const std::string& path,
                        const std::function<void(Sample&&)>& sink);

// Source-format converters. The assumed on-disk schemas are documented next
// to each parser in corpus.cpp; mismatches fail with the record index.
std::vector<Sample> convert_dataset(const std::string& path, SourceFormat format);

DatasetStats compute_stats(const std::vector<Sample>& samples);

// CSV row/report for stats; header:
// dataset,n_literal,n_metonymic,n_total,n_unique_pmw,avg_len
std::string stats_csv_header();
std::string stats_csv_row(const std::string& dataset, const DatasetStats& st);

// Partitions samples per spec. Fixed: seeded shuffle + fraction cuts.
// Lexical: no pmw_key occurs in two parts (greedy by descending key
// frequency into the part with the largest remaining deficit).
// KFold: k folds with sizes differing by at most one.
std::vector<std::vector<Sample>> split(const std::vector<Sample>& samples,
                                       const SplitSpec& spec);

}  // namespace meton
