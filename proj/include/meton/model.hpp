#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "meton/rng.hpp"
#include "meton/tokenizer.hpp"

namespace meton {

struct ModelConfig {
  int vocab_size = 0;
  int hidden = 64;
  int layers = 4;
  int heads = 4;
  int ffn = 256;
  int max_positions = 256;
  double dropout = 0.1;
  int classes = 2;

  int head_dim() const { return hidden / heads; }
  void validate() const;
  // CPU-trainable default: deep enough to show layered attention structure.
  static ModelConfig desk(int vocab_size);
};

struct LayerParams {
  Eigen::MatrixXd wq, wk, wv, wo;  // hidden x hidden, applied as x * W
  Eigen::VectorXd bq, bk, bv, bo;
  Eigen::MatrixXd w1;  // hidden x ffn
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;  // ffn x hidden
  Eigen::VectorXd b2;
  Eigen::VectorXd ln1_gamma, ln1_beta;  // post-attention norm
  Eigen::VectorXd ln2_gamma, ln2_beta;  // post-FFN norm
};

struct ModelParams {
  ModelConfig config;
  Eigen::MatrixXd tok_emb;  // vocab x hidden
  Eigen::MatrixXd pos_emb;  // max_positions x hidden
  Eigen::VectorXd emb_ln_gamma, emb_ln_beta;
  std::vector<LayerParams> layers;
  Eigen::MatrixXd cls_w;  // hidden x classes
  Eigen::VectorXd cls_b;

  std::size_t parameter_count() const;
};

// Uniform +-1/sqrt(fan_in) weights, zero biases, unit norm gains.
ModelParams init_params(const ModelConfig& config, Rng& rng);
ModelParams zeros_like(const ModelParams& p);

// Named view over every parameter tensor in a fixed order; shared by the
// optimizer, the checkpoint container, and finite-difference checks.
struct TensorRef {
  std::string name;
  double* data;
  Eigen::Index rows;
  Eigen::Index cols;  // 1 for vectors
  Eigen::Index size() const { return rows * cols; }
};
std::vector<TensorRef> tensor_refs(ModelParams& p);

// Per-layer, per-head attention mass on the target key positions, averaged
// over non-pad query rows. One sample point per head; heads average to the
// per-layer value.
struct AttentionTrace {
  std::vector<std::vector<double>> head_target_mass;  // [layer][head]
};

// Mean over heads, one value per layer.
std::vector<double> extract_attention(const AttentionTrace& trace);

struct ForwardOptions {
  bool train = false;       // enables dropout; requires rng when dropout > 0
  Rng* rng = nullptr;
  bool capture_attention = false;  // keep full per-head logits/probs
};

struct ForwardResult {
  Eigen::VectorXd scores;   // classes
  Eigen::MatrixXd hidden;   // seq x hidden, last layer
  AttentionTrace trace;
  // populated only under capture_attention: [layer][head], seq x seq
  std::vector<std::vector<Eigen::MatrixXd>> attn_logits;
  std::vector<std::vector<Eigen::MatrixXd>> attn_probs;
};

// Full encoder pass plus span-averaged linear head. Trailing [PAD] ids are
// masked out of attention; scores are invariant to padding. Deterministic
// when train is off.
ForwardResult forward(const ModelParams& params, const TokenizedInput& input,
                      const ForwardOptions& options = {});

// Element-wise mean of rows i..j (inclusive). The span must lie strictly
// inside the CLS/SEP framing.
Eigen::VectorXd span_average(const Eigen::MatrixXd& hidden, int i, int j);

struct LabeledInput {
  TokenizedInput input;
  int label;  // class index
};

// Mean cross-entropy over the batch and exact gradients for every parameter.
// Dropout masks are drawn from rng when params.config.dropout > 0 and
// train_mode is set.
std::pair<double, ModelParams> loss_and_grad(const ModelParams& params,
                                             const std::vector<LabeledInput>& batch,
                                             bool train_mode = true,
                                             Rng* rng = nullptr);

// Softmax class probabilities for one input (eval mode).
Eigen::VectorXd predict_probs(const ModelParams& params,
                              const TokenizedInput& input);

// Inference-only encoder surface; lets a different backbone (e.g. real
// pretrained weights behind an adapter) replace the built-in transformer
// without touching callers.
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual int hidden_size() const = 0;
  virtual Eigen::MatrixXd encode(const TokenizedInput& input,
                                 AttentionTrace* trace) const = 0;
};

class TransformerEncoder final : public Encoder {
 public:
  explicit TransformerEncoder(ModelParams params) : params_(std::move(params)) {}
  int hidden_size() const override { return params_.config.hidden; }
  Eigen::MatrixXd encode(const TokenizedInput& input,
                         AttentionTrace* trace) const override;
  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
};

}  // namespace meton
