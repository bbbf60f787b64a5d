// Copyright 2026 The tqekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TQE_MODEL_ENCODER_HPP_
#define TQE_MODEL_ENCODER_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tqe/data.hpp"
#include "tqe/model/vocab.hpp"

namespace tqe {

// The paper's two sentence-pair encodings: "split" encodes source and
// hypothesis separately and concatenates the two [CLS] vectors; "concat"
// encodes the joint sequence "[CLS] source [SEP] hypothesis" and uses its
// single [CLS] vector.
enum class EncodingMode {
  kSplit,
  kConcat,
};

std::string mode_to_string(EncodingMode mode);
EncodingMode mode_from_string(const std::string& s);

struct EncoderConfig {
  int embed_dim = 64;
  int layers = 2;
  int heads = 2;
  int ff_dim = 128;
  int max_seq_len = 96;
  EncodingMode mode = EncodingMode::kConcat;
  std::uint64_t seed = 0;

  /// Throws Error unless embed_dim divides evenly by heads, max_seq_len >= 3
  /// and all dimensions are positive.
  void validate() const;

  /// Length of the regression feature: embed_dim for concat, twice that for
  /// split.
  int feature_dim() const {
    return mode == EncodingMode::kSplit ? 2 * embed_dim : embed_dim;
  }
};

// One named tensor inside the flat parameter vector. Parameters are stored
// column-major in the buffer; serialization emits them row-major with the
// shape alongside.
struct TensorSpec {
  enum class Init { kUniform, kOnes, kZeros };

  std::string name;
  int rows = 0;
  int cols = 0;
  std::ptrdiff_t offset = 0;
  Init init = Init::kZeros;
  bool in_head = false;  // serialized under "head" rather than "parameters"

  std::ptrdiff_t size() const {
    return static_cast<std::ptrdiff_t>(rows) * cols;
  }
};

// Fixed registry of every tensor in the model, in initialization order.
class ParamLayout {
 public:
  ParamLayout(const EncoderConfig& config, int vocab_size);

  const std::vector<TensorSpec>& tensors() const { return tensors_; }
  const TensorSpec& find(const std::string& name) const;  // throws Error
  std::ptrdiff_t total_size() const { return total_size_; }

 private:
  std::vector<TensorSpec> tensors_;
  std::ptrdiff_t total_size_ = 0;
};

// Mini self-attention encoder plus affine regression head over a single
// flat parameter buffer, with explicit Forward/Backward passes. Training is
// single-threaded; all randomness comes from the config seed.
class Model {
 public:
  /// Fresh model: embeddings and weight matrices drawn from a seeded
  /// uniform(-0.05, 0.05), norms at identity, biases at zero.
  Model(Vocab vocab, const EncoderConfig& config);

  /// Wraps existing parameters (e.g. from a checkpoint).
  Model(Vocab vocab, const EncoderConfig& config, Eigen::VectorXd parameters);

  const Vocab& vocab() const { return vocab_; }
  const EncoderConfig& config() const { return config_; }
  const ParamLayout& layout() const { return layout_; }
  const Eigen::VectorXd& parameters() const { return params_; }
  Eigen::VectorXd& mutable_parameters() { return params_; }

  /// Token-id sequences for one example, with [CLS]/[SEP] framing and the
  /// documented truncation (split: each tail-truncated to max_seq_len - 1
  /// tokens; concat: the longer segment trimmed from its end first, the
  /// hypothesis on ties).
  std::vector<std::vector<int>> encode_ids(const std::string& source,
                                           const std::string& hypothesis) const;

  /// Feature vector for one pair: length d (concat) or 2d (split).
  Eigen::VectorXd encode(const std::string& source,
                         const std::string& hypothesis) const;

  /// RMSE loss over the batch; per-example predictions via `predictions`.
  /// Caches activations for backward().
  double forward_loss(const std::vector<const QeTuple*>& batch,
                      std::vector<double>* predictions = nullptr);

  /// Gradients of the last forward_loss with respect to every parameter.
  /// The zero-residual subgradient is defined as zero.
  Eigen::VectorXd backward() const;

  /// Deterministic raw regression scores, in input order.
  std::vector<double> predict(
      const std::vector<std::pair<std::string, std::string>>& pairs) const;

  /// Attention weights for one pair, for inspection: one T x T matrix per
  /// (layer, sequence, head) in that nesting order, rows indexed by query
  /// position. Rows of padded queries are all zero.
  std::vector<Eigen::MatrixXd> attention_maps(
      const std::string& source, const std::string& hypothesis) const;

 private:
  struct EncodedBatch {
    std::vector<std::vector<int>> seqs;  // framed ids, one or two per example
    std::vector<int> valid_len;
    int max_len = 0;
    int examples = 0;
  };

  struct LayerActs {
    Eigen::VectorXd mu1, inv1;
    Eigen::MatrixXd a;  // ln1 output, input to QKV
    Eigen::MatrixXd q, k, v;
    std::vector<Eigen::MatrixXd> att;  // per (sequence, head), each T x T
    Eigen::MatrixXd o;      // attention mix, input to the output projection
    Eigen::MatrixXd x_mid;  // after the attention residual
    Eigen::VectorXd mu2, inv2;
    Eigen::MatrixXd bn;  // ln2 output, input to the feed-forward
    Eigen::MatrixXd f1;  // pre-GELU
    Eigen::MatrixXd g;   // post-GELU
    Eigen::MatrixXd x_out;
  };

  struct Activations {
    EncodedBatch batch;
    Eigen::MatrixXd x0;
    std::vector<LayerActs> layers;
    Eigen::VectorXd mu_f, inv_f;
    Eigen::MatrixXd y;         // final layer norm output
    Eigen::MatrixXd features;  // feature_dim x examples
    std::vector<double> preds;
    std::vector<double> labels;
    double loss = 0.0;
  };

  Eigen::Map<const Eigen::MatrixXd> tensor(const std::string& name) const;
  Eigen::Map<Eigen::MatrixXd> grad_tensor(Eigen::VectorXd& grads,
                                          const std::string& name) const;

  EncodedBatch make_batch(
      const std::vector<std::pair<const std::string*, const std::string*>>&
          pairs) const;
  void run_forward(Activations& acts) const;
  void init_parameters();
  void init_positional();

  Vocab vocab_;
  EncoderConfig config_;
  ParamLayout layout_;
  Eigen::VectorXd params_;
  Eigen::MatrixXd positional_;  // embed_dim x max_seq_len, sinusoidal
  Activations acts_;            // caches from the last forward_loss
  bool has_acts_ = false;
};

}  // namespace tqe

#endif  // TQE_MODEL_ENCODER_HPP_
