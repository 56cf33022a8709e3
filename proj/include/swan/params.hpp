// swan/params.hpp
//
// Trainable parameters of the segment scorer, plus checkpoint IO. The same
// struct doubles as a gradient buffer (zeros_like + accumulate).

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "swan/types.hpp"

namespace swan {

// One gated recurrent cell: update gate z, reset gate r, candidate n.
//   z = sigmoid(Wz e + Uz h + bz)
//   r = sigmoid(Wr e + Ur h + br)
//   n = tanh(Wn e + Un (r .* h) + bn)
//   h' = z .* h + (1 - z) .* n
struct GruCellParams {
  Eigen::MatrixXd Wz, Wr, Wn;  // hidden x input
  Eigen::MatrixXd Uz, Ur, Un;  // hidden x hidden
  Eigen::VectorXd bz, br, bn;  // hidden

  int hidden() const { return static_cast<int>(Uz.rows()); }
  int input() const { return static_cast<int>(Wz.cols()); }

  static GruCellParams zeros(int input, int hidden);
};

// All trainable tensors. Row V of `embed` is the begin-of-segment embedding
// fed to the segment cell at step 1; rows 0..V-1 are shared between the
// segment cell and the connector.
struct SegmentScorerParams {
  ModelConfig cfg;
  Eigen::MatrixXd embed;                  // (V+1) x E
  std::vector<GruCellParams> seg_cell;    // seg_depth layers; layer 0 input E, others H
  Eigen::MatrixXd out_w;                  // (V+1) x H
  Eigen::VectorXd out_b;                  // (V+1)
  std::vector<GruCellParams> conn_cell;   // conn_depth layers; layer 0 input E, others Hc
  Eigen::MatrixXd conn_proj;              // H x Hc
  Eigen::MatrixXd in_proj;                // H x d
  std::vector<GruCellParams> enc_cell;    // optional encoder (input d, hidden d)

  std::size_t parameter_count() const;
};

// Uniform init in [-0.08, 0.08] from a seeded generator.
SegmentScorerParams init_params(const ModelConfig& cfg, std::uint64_t seed);
SegmentScorerParams zeros_like(const SegmentScorerParams& p);

// Flat view of one named tensor; `data` points into the owning struct.
struct TensorRef {
  std::string name;
  double* data;
  Eigen::Index rows, cols;
  Eigen::Index size() const { return rows * cols; }
};

std::vector<TensorRef> tensor_refs(SegmentScorerParams& p);

Eigen::VectorXd flatten_params(const SegmentScorerParams& p);
void unflatten_params(const Eigen::VectorXd& flat, SegmentScorerParams& p);

// a += scale * b (same shapes).
void axpy_params(double scale, const SegmentScorerParams& b, SegmentScorerParams& a);

// Returns the name of the first tensor holding a non-finite value, or "".
std::string first_nonfinite_tensor(const SegmentScorerParams& p);

// --- Checkpoint ------------------------------------------------------------
//
// A checkpoint is a JSON document: {"format": "swan-checkpoint-v1",
// "config": {...}, "out_vocab": [...], "in_vocab": [...],
// "tensors": {name: {"rows": r, "cols": c, "data": [...]}}}.
// Doubles are serialized with round-trip precision, so save/load is
// bit-exact.

struct Checkpoint {
  SegmentScorerParams params;
  Vocab out_vocab;                    // may be empty (size 0 sentinel not allowed; absent key)
  std::vector<std::string> in_vocab;  // input symbol names for one-hot tasks
  bool has_out_vocab = false;
};

void save_checkpoint(const Checkpoint& ck, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace swan
