// swan/types.cpp

#include "swan/types.hpp"

#include <fmt/format.h>

#include <fstream>
#include <numeric>
#include <stdexcept>

namespace swan {

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  if (tokens.empty()) throw std::invalid_argument("vocabulary must contain at least one token");
  Vocab v;
  v.tokens_ = std::move(tokens);
  for (int i = 0; i < static_cast<int>(v.tokens_.size()); ++i) {
    const auto& tok = v.tokens_[i];
    if (tok == "$")
      throw std::invalid_argument("token \"$\" is reserved for end-of-segment");
    if (tok.empty())
      throw std::invalid_argument("empty vocabulary token");
    if (!v.index_.emplace(tok, i).second)
      throw std::invalid_argument(fmt::format("duplicate vocabulary token \"{}\"", tok));
  }
  return v;
}

Vocab Vocab::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open vocabulary file {}", path));
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    tokens.push_back(line);
  }
  return from_tokens(std::move(tokens));
}

void Vocab::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write vocabulary file {}", path));
  for (const auto& tok : tokens_) out << tok << '\n';
}

int Vocab::id(const std::string& tok) const {
  auto it = index_.find(tok);
  if (it == index_.end())
    throw std::invalid_argument(fmt::format("unknown token {}", tok));
  return it->second;
}

std::vector<int> Segmentation::flatten() const {
  std::vector<int> out;
  for (const auto& s : segments) out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::vector<int> Segmentation::segment_lengths() const {
  std::vector<int> out;
  out.reserve(segments.size());
  for (const auto& s : segments) out.push_back(static_cast<int>(s.size()));
  return out;
}

void ModelConfig::validate() const {
  if (V < 1) throw std::invalid_argument("ModelConfig: V must be >= 1");
  if (d < 1) throw std::invalid_argument("ModelConfig: d must be >= 1");
  if (H < 1 || Hc < 1 || E < 1) throw std::invalid_argument("ModelConfig: widths must be >= 1");
  if (L < 1) throw std::invalid_argument("ModelConfig: L must be >= 1");
  if (seg_depth < 1 || conn_depth < 1) throw std::invalid_argument("ModelConfig: depth must be >= 1");
}

bool feasible(const ModelConfig& cfg, int T, int Tp, SegCase c) {
  if (c == SegCase::kCaseI) return T >= 1;
  return static_cast<long long>(T) <= static_cast<long long>(Tp) * cfg.L;
}

OutputSeq encode_tokens(std::span<const std::string> text, const Vocab& vocab) {
  OutputSeq seq;
  seq.ids.reserve(text.size());
  for (const auto& tok : text) seq.ids.push_back(vocab.id(tok));
  return seq;
}

std::vector<std::string> decode_tokens(const OutputSeq& seq, const Vocab& vocab) {
  std::vector<std::string> out;
  out.reserve(seq.ids.size());
  for (int id : seq.ids) {
    if (id < 0 || id >= vocab.size())
      throw std::invalid_argument(fmt::format("token id {} out of range [0, {})", id, vocab.size()));
    out.push_back(vocab.token(id));
  }
  return out;
}

void validate_segmentation(const Segmentation& seg, const OutputSeq& y, int L,
                           SegCase c, int Tp) {
  if (c == SegCase::kCaseII && Tp >= 0 && seg.segment_count() != Tp)
    throw std::invalid_argument(fmt::format(
        "segmentation has {} segments, expected exactly {}", seg.segment_count(), Tp));
  if (c == SegCase::kCaseI && seg.segment_count() < 1)
    throw std::invalid_argument("segmentation must contain at least one segment");
  for (const auto& s : seg.segments) {
    if (static_cast<int>(s.size()) > L)
      throw std::invalid_argument(fmt::format(
          "segment of length {} exceeds maximum segment length {}", s.size(), L));
    if (c == SegCase::kCaseI && s.empty())
      throw std::invalid_argument("empty segments are not permitted in Case I");
  }
  if (seg.flatten() != y.ids)
    throw std::invalid_argument("segment concatenation does not equal the target sequence");
}

}  // namespace swan
