// swan/types.hpp
//
// Core domain types shared by every module: vocabularies, token sequences,
// dense input sequences, segmentations and the model configuration.
//
// Conventions used throughout the library:
//   * Output tokens are ids in [0, V). The end-of-segment symbol is not a
//     vocabulary token; it is class index V of every segment softmax.
//   * Case I  = single-vector input, segment count unbounded, empty segments
//     forbidden.
//   * Case II = sequence input ("sleep-wake"), exactly T' segments, empty
//     segments allowed.

#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace swan {

enum class SegCase { kCaseI, kCaseII };

class Vocab {
 public:
  Vocab() = default;

  // Throws if tokens are empty, duplicated, or contain the reserved "$".
  static Vocab from_tokens(std::vector<std::string> tokens);

  // One token per line; line number = token id.
  static Vocab load(const std::string& path);
  void save(const std::string& path) const;

  int size() const { return static_cast<int>(tokens_.size()); }  // V
  int end_of_segment() const { return size(); }                  // class index V

  const std::string& token(int id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool contains(const std::string& tok) const { return index_.count(tok) > 0; }
  int id(const std::string& tok) const;  // throws naming the token

  bool operator==(const Vocab& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

struct OutputSeq {
  std::vector<int> ids;  // each in [0, V)

  OutputSeq() = default;
  explicit OutputSeq(std::vector<int> v) : ids(std::move(v)) {}

  int length() const { return static_cast<int>(ids.size()); }  // T
  bool operator==(const OutputSeq& o) const { return ids == o.ids; }
};

struct InputSeq {
  Eigen::MatrixXd features;  // d x T', column t-1 is x_t

  InputSeq() = default;
  explicit InputSeq(Eigen::MatrixXd f) : features(std::move(f)) {}

  int dim() const { return static_cast<int>(features.rows()); }     // d
  int length() const { return static_cast<int>(features.cols()); }  // T'
};

struct Segmentation {
  std::vector<std::vector<int>> segments;

  int segment_count() const { return static_cast<int>(segments.size()); }
  std::vector<int> flatten() const;
  std::vector<int> segment_lengths() const;
};

struct ModelConfig {
  int V = 0;   // vocabulary size (excludes end-of-segment)
  int d = 0;   // input feature dimension
  int H = 64;  // segment recurrent cell width
  int Hc = 32; // connector recurrent cell width
  int L = 3;   // maximum segment length
  int E = 16;  // token embedding dimension
  int seg_depth = 1;
  int conn_depth = 1;
  bool use_encoder = false;  // optional recurrent encoder over x (d -> d)

  void validate() const;  // throws on nonsense dims
};

// Case II: a length-T target is reachable iff T <= T' * L.
// Case I: T >= 1 (T' ignored; segment count unbounded).
bool feasible(const ModelConfig& cfg, int T, int Tp,
              SegCase c = SegCase::kCaseII);

OutputSeq encode_tokens(std::span<const std::string> text, const Vocab& vocab);
std::vector<std::string> decode_tokens(const OutputSeq& seq, const Vocab& vocab);

// Checks concatenation, per-segment length cap, segment count (Case II) and
// the no-empty-segments rule (Case I). Throws with a description on failure.
void validate_segmentation(const Segmentation& seg, const OutputSeq& y, int L,
                           SegCase c, int Tp = -1);

}  // namespace swan
