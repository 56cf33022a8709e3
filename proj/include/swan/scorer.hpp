// swan/scorer.hpp
//
// Neural segment scorer. For every input position t and output prefix length
// j it produces the log-probability of each candidate segment
//
//   logp[t][j][l] = log p(y_{j+1..j+l} then end-of-segment | x_t, y_{1..j})
//
// for l = 0..min(L, T-j). One recurrent pass over the longest segment at
// (t, j) yields every shorter segment's score as a by-product: the running
// sum of token log-probabilities is the shared prefix, and the end-of-segment
// log-probability read at step l+1 completes the length-l entry.
//
// The segment cell's initial state is in_proj * x_t + conn_proj * c_j, where
// c_j is the connector network state after consuming y_{1..j}. Step 1 feeds a
// learned begin-of-segment embedding (row V of the embedding table).
//
// accumulate_gradients back-propagates a weighted combination of all segment
// log-probabilities through the shared passes: inside the pass for (t, j) the
// token emission at step i carries the summed weight of every segment long
// enough to contain it, and the end-of-segment emission at step i carries the
// weight of the length-(i-1) segment alone.

#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "swan/params.hpp"
#include "swan/types.hpp"

namespace swan {

// Cached activations of one unrolled step of one cell layer, batched over
// lattice columns (P = T' * (T+1) (t, j) pairs; the connector uses P = 1).
struct GruLayerCache {
  Eigen::MatrixXd h_prev;  // state entering the step
  Eigen::MatrixXd e_in;    // layer input
  Eigen::MatrixXd z, r, n;
  Eigen::MatrixXd h_new;
};

struct ConnectorStates {
  int T = 0;
  Eigen::MatrixXd top;  // Hc x (T+1); column j = top-layer state after y_{1..j}
  bool has_cache = false;
  std::vector<std::vector<GruLayerCache>> steps;  // [T][conn_depth]
};

struct SegmentLattice {
  int T = 0, Tp = 0, L = 0, V = 0;
  std::vector<double> logp;  // Tp * (T+1) * (L+1), kLogZero where absent

  // t in [1, Tp], j in [0, T], l in [0, L].
  double at(int t, int j, int l) const {
    if (l > L || j + l > T) return kLogZeroValue();
    return logp[index(t, j, l)];
  }
  std::size_t index(int t, int j, int l) const {
    return (static_cast<std::size_t>(t - 1) * (T + 1) + j) * (L + 1) + l;
  }
  static double kLogZeroValue();

  // Shared-pass caches (present when built with want_cache).
  bool has_cache = false;
  int P = 0;       // Tp * (T+1) columns, p = (t-1)*(T+1) + j
  int unroll = 0;  // min(L, T) + 1 steps
  std::vector<std::vector<GruLayerCache>> steps;  // [unroll][seg_depth]
  std::vector<Eigen::MatrixXd> probs;             // [unroll], (V+1) x P softmax
  ConnectorStates conn;
};

// Case I lattice: logp1[j][l] = log p(y_{j+1..j+l} then $ | x, y_{1..j}),
// l in [1, min(L, T-j)]. Empty segments are not part of Case I.
struct Case1Lattice {
  int T = 0, L = 0;
  std::vector<double> logp;
  double at(int j, int l) const {
    if (l < 1 || l > L || j + l > T) return kLogZero;
    return logp[static_cast<std::size_t>(j) * (L + 1) + l];
  }
  double& slot(int j, int l) { return logp[static_cast<std::size_t>(j) * (L + 1) + l]; }
};

// Posterior weight of segment (t, j, l); same indexing as the lattice.
struct GradientWeights {
  int T = 0, Tp = 0, L = 0;
  std::vector<double> w;  // Tp * (T+1) * (L+1), zero where absent

  double at(int t, int j, int l) const { return w[index(t, j, l)]; }
  double& slot(int t, int j, int l) { return w[index(t, j, l)]; }
  std::size_t index(int t, int j, int l) const {
    return (static_cast<std::size_t>(t - 1) * (T + 1) + j) * (L + 1) + l;
  }
  static GradientWeights zeros(int T, int Tp, int L);
};

struct ScorerGradients {
  SegmentScorerParams g;  // same shapes as the parameters
  Eigen::MatrixXd dx;     // d x Tp, gradient of the weighted objective wrt x_t
};

// One gated-recurrent step, vector form. Shared by the decoder, the oracle's
// independent segment evaluation, and nothing else.
Eigen::VectorXd gru_step(const GruCellParams& c, const Eigen::VectorXd& h,
                         const Eigen::VectorXd& e);

// Stacked step: states[l] is layer l's hidden state, updated in place;
// returns the top layer's new state.
Eigen::VectorXd gru_stack_step(std::span<const GruCellParams> cells,
                               std::vector<Eigen::VectorXd>& states,
                               const Eigen::VectorXd& e);

// Connector network: state c_j after consuming y_{1..j}; c_0 = 0.
ConnectorStates connector_states(const OutputSeq& y, const SegmentScorerParams& p,
                                 bool want_cache = false);

// Shared longest-segment pass over all (t, j). Throws on dimension mismatch,
// out-of-range token ids, or non-finite scores (named by (t, j)).
SegmentLattice segment_lattice(const InputSeq& x, const OutputSeq& y,
                               const SegmentScorerParams& p, bool want_cache = true);

// Re-runs every segment length independently from the initial state;
// values match segment_lattice, cost grows quadratically in L. No caches.
SegmentLattice segment_lattice_naive(const InputSeq& x, const OutputSeq& y,
                                     const SegmentScorerParams& p);

Case1Lattice case1_lattice(const Eigen::VectorXd& x, const OutputSeq& y,
                           const SegmentScorerParams& p);

// d/dtheta sum_t sum_{j,l} w_t(j,l) * logp[t][j][l], one backward pass per
// (t, j) longest segment. Requires a cached lattice.
ScorerGradients accumulate_gradients(const SegmentLattice& lat, const GradientWeights& w,
                                     const InputSeq& x, const OutputSeq& y,
                                     const SegmentScorerParams& p);

// --- Optional input encoder -------------------------------------------------

struct EncoderCache {
  std::vector<std::vector<GruLayerCache>> steps;  // [T'][enc layers]
};

// Single recurrent layer over x; output dimension equals d. Identity when the
// model has no encoder.
InputSeq apply_encoder(const SegmentScorerParams& p, const InputSeq& x,
                       EncoderCache* cache = nullptr);

// Back-propagates d_enc_out (d x T') through the encoder into g.enc_cell.
void encoder_backward(const SegmentScorerParams& p, const EncoderCache& cache,
                      const InputSeq& x, const Eigen::MatrixXd& d_enc_out,
                      SegmentScorerParams& g);

}  // namespace swan
