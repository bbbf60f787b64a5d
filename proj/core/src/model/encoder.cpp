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

#include "tqe/model/encoder.hpp"

#include <cmath>

#include "tqe/error.hpp"
#include "tqe/rng.hpp"

namespace tqe {

namespace {

constexpr double kLnEps = 1e-5;
constexpr double kInitRange = 0.05;
constexpr int kPredictChunk = 128;

double gelu(double x) {
  return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2));
}

double gelu_grad(double x) {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  double cdf = 0.5 * (1.0 + std::erf(x * M_SQRT1_2));
  return cdf + x * kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Column-wise layer norm; caches per-column mean and inverse std-dev for the
// backward pass.
void layer_norm_forward(const Eigen::MatrixXd& x,
                        const Eigen::Ref<const Eigen::VectorXd>& gamma,
                        const Eigen::Ref<const Eigen::VectorXd>& beta,
                        Eigen::MatrixXd& out, Eigen::VectorXd& mu,
                        Eigen::VectorXd& inv) {
  const Eigen::Index rows = x.rows(), cols = x.cols();
  out.resize(rows, cols);
  mu.resize(cols);
  inv.resize(cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    double m = x.col(c).mean();
    double var = (x.col(c).array() - m).square().sum() /
                 static_cast<double>(rows);
    double is = 1.0 / std::sqrt(var + kLnEps);
    mu[c] = m;
    inv[c] = is;
    out.col(c) = (gamma.array() * ((x.col(c).array() - m) * is) + beta.array())
                     .matrix();
  }
}

// Accumulates dgamma/dbeta and adds the input gradient into dx.
void layer_norm_backward(const Eigen::MatrixXd& dy, const Eigen::MatrixXd& x,
                         const Eigen::VectorXd& mu, const Eigen::VectorXd& inv,
                         const Eigen::Ref<const Eigen::VectorXd>& gamma,
                         Eigen::Map<Eigen::MatrixXd> dgamma,
                         Eigen::Map<Eigen::MatrixXd> dbeta,
                         Eigen::MatrixXd& dx) {
  const Eigen::Index rows = x.rows(), cols = x.cols();
  Eigen::ArrayXd xhat(rows), dxhat(rows);
  for (Eigen::Index c = 0; c < cols; ++c) {
    xhat = (x.col(c).array() - mu[c]) * inv[c];
    dxhat = dy.col(c).array() * gamma.array();
    dgamma.col(0).array() += dy.col(c).array() * xhat;
    dbeta.col(0).array() += dy.col(c).array();
    double m1 = dxhat.mean();
    double m2 = (dxhat * xhat).mean();
    dx.col(c).array() += inv[c] * (dxhat - m1 - xhat * m2);
  }
}

}  // namespace

std::string mode_to_string(EncodingMode mode) {
  return mode == EncodingMode::kSplit ? "split" : "concat";
}

EncodingMode mode_from_string(const std::string& s) {
  if (s == "split") return EncodingMode::kSplit;
  if (s == "concat") return EncodingMode::kConcat;
  throw Error("unknown encoding mode '" + s + "' (expected split or concat)");
}

void EncoderConfig::validate() const {
  if (embed_dim < 1 || layers < 1 || heads < 1 || ff_dim < 1) {
    throw Error("encoder config: all dimensions must be positive");
  }
  if (embed_dim % heads != 0) {
    throw Error("encoder config: embed_dim (" + std::to_string(embed_dim) +
                ") must divide evenly by heads (" + std::to_string(heads) +
                ")");
  }
  if (max_seq_len < 3) {
    throw Error("encoder config: max_seq_len must be >= 3");
  }
}

ParamLayout::ParamLayout(const EncoderConfig& config, int vocab_size) {
  config.validate();
  if (vocab_size < 5) {
    throw Error("param layout: vocabulary must hold the 4 specials plus at "
                "least one token");
  }
  const int d = config.embed_dim, ff = config.ff_dim;
  auto add = [&](std::string name, int rows, int cols, TensorSpec::Init init,
                 bool in_head = false) {
    TensorSpec spec{std::move(name), rows, cols, total_size_, init, in_head};
    total_size_ += spec.size();
    tensors_.push_back(std::move(spec));
  };
  add("embedding", d, vocab_size, TensorSpec::Init::kUniform);
  for (int l = 0; l < config.layers; ++l) {
    std::string p = "layers." + std::to_string(l) + ".";
    add(p + "ln1.gamma", d, 1, TensorSpec::Init::kOnes);
    add(p + "ln1.beta", d, 1, TensorSpec::Init::kZeros);
    add(p + "attn.wq", d, d, TensorSpec::Init::kUniform);
    add(p + "attn.bq", d, 1, TensorSpec::Init::kZeros);
    add(p + "attn.wk", d, d, TensorSpec::Init::kUniform);
    add(p + "attn.bk", d, 1, TensorSpec::Init::kZeros);
    add(p + "attn.wv", d, d, TensorSpec::Init::kUniform);
    add(p + "attn.bv", d, 1, TensorSpec::Init::kZeros);
    add(p + "attn.wo", d, d, TensorSpec::Init::kUniform);
    add(p + "attn.bo", d, 1, TensorSpec::Init::kZeros);
    add(p + "ln2.gamma", d, 1, TensorSpec::Init::kOnes);
    add(p + "ln2.beta", d, 1, TensorSpec::Init::kZeros);
    add(p + "ff.w1", ff, d, TensorSpec::Init::kUniform);
    add(p + "ff.b1", ff, 1, TensorSpec::Init::kZeros);
    add(p + "ff.w2", d, ff, TensorSpec::Init::kUniform);
    add(p + "ff.b2", d, 1, TensorSpec::Init::kZeros);
  }
  add("final_ln.gamma", d, 1, TensorSpec::Init::kOnes);
  add("final_ln.beta", d, 1, TensorSpec::Init::kZeros);
  add("head.weight", config.feature_dim(), 1, TensorSpec::Init::kUniform,
      true);
  add("head.bias", 1, 1, TensorSpec::Init::kZeros, true);
}

const TensorSpec& ParamLayout::find(const std::string& name) const {
  for (const TensorSpec& spec : tensors_) {
    if (spec.name == name) return spec;
  }
  throw Error("unknown parameter tensor '" + name + "'");
}

Model::Model(Vocab vocab, const EncoderConfig& config)
    : vocab_(std::move(vocab)),
      config_(config),
      layout_(config, vocab_.size()),
      params_(layout_.total_size()) {
  init_parameters();
}

Model::Model(Vocab vocab, const EncoderConfig& config,
             Eigen::VectorXd parameters)
    : vocab_(std::move(vocab)),
      config_(config),
      layout_(config, vocab_.size()),
      params_(std::move(parameters)) {
  if (params_.size() != layout_.total_size()) {
    throw Error("parameter vector has " + std::to_string(params_.size()) +
                " entries, layout expects " +
                std::to_string(layout_.total_size()));
  }
  init_positional();
}

void Model::init_parameters() {
  Rng rng(config_.seed);
  for (const TensorSpec& spec : layout_.tensors()) {
    auto segment = params_.segment(spec.offset, spec.size());
    switch (spec.init) {
      case TensorSpec::Init::kUniform:
        for (std::ptrdiff_t i = 0; i < spec.size(); ++i) {
          segment[i] = rng.uniform(-kInitRange, kInitRange);
        }
        break;
      case TensorSpec::Init::kOnes:
        segment.setOnes();
        break;
      case TensorSpec::Init::kZeros:
        segment.setZero();
        break;
    }
  }
  init_positional();
}

void Model::init_positional() {
  const int d = config_.embed_dim;
  positional_.resize(d, config_.max_seq_len);
  for (int pos = 0; pos < config_.max_seq_len; ++pos) {
    for (int i = 0; i < d; ++i) {
      double exponent = static_cast<double>(2 * (i / 2)) / d;
      double angle = pos * std::pow(10000.0, -exponent);
      positional_(i, pos) = (i % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
  }
}

Eigen::Map<const Eigen::MatrixXd> Model::tensor(const std::string& name) const {
  const TensorSpec& spec = layout_.find(name);
  return {params_.data() + spec.offset, spec.rows, spec.cols};
}

Eigen::Map<Eigen::MatrixXd> Model::grad_tensor(Eigen::VectorXd& grads,
                                               const std::string& name) const {
  const TensorSpec& spec = layout_.find(name);
  return {grads.data() + spec.offset, spec.rows, spec.cols};
}

std::vector<std::vector<int>> Model::encode_ids(
    const std::string& source, const std::string& hypothesis) const {
  auto to_ids = [&](const std::string& text) {
    std::vector<int> ids;
    for (const std::string& tok : model_tokenize(text)) {
      ids.push_back(vocab_.lookup(tok));
    }
    return ids;
  };
  std::vector<int> src = to_ids(source);
  std::vector<int> hyp = to_ids(hypothesis);
  const std::size_t max_len = static_cast<std::size_t>(config_.max_seq_len);

  if (config_.mode == EncodingMode::kSplit) {
    auto frame = [&](std::vector<int>& ids) {
      if (ids.size() > max_len - 1) ids.resize(max_len - 1);
      std::vector<int> seq;
      seq.reserve(ids.size() + 1);
      seq.push_back(Vocab::kCls);
      seq.insert(seq.end(), ids.begin(), ids.end());
      return seq;
    };
    return {frame(src), frame(hyp)};
  }

  // Concat: trim the longer segment first, from its end; the hypothesis on
  // ties.
  const std::size_t budget = max_len - 2;
  while (src.size() + hyp.size() > budget) {
    if (hyp.size() >= src.size() && !hyp.empty()) {
      hyp.pop_back();
    } else {
      src.pop_back();
    }
  }
  std::vector<int> seq;
  seq.reserve(src.size() + hyp.size() + 2);
  seq.push_back(Vocab::kCls);
  seq.insert(seq.end(), src.begin(), src.end());
  seq.push_back(Vocab::kSep);
  seq.insert(seq.end(), hyp.begin(), hyp.end());
  return {seq};
}

Model::EncodedBatch Model::make_batch(
    const std::vector<std::pair<const std::string*, const std::string*>>&
        pairs) const {
  EncodedBatch batch;
  batch.examples = static_cast<int>(pairs.size());
  for (const auto& [src, hyp] : pairs) {
    for (std::vector<int>& seq : encode_ids(*src, *hyp)) {
      batch.valid_len.push_back(static_cast<int>(seq.size()));
      batch.max_len = std::max(batch.max_len, batch.valid_len.back());
      batch.seqs.push_back(std::move(seq));
    }
  }
  return batch;
}

void Model::run_forward(Activations& acts) const {
  const EncodedBatch& batch = acts.batch;
  const int S = static_cast<int>(batch.seqs.size());
  const int T = batch.max_len;
  const int d = config_.embed_dim;
  const int H = config_.heads;
  const int dh = d / H;
  const Eigen::Index cols = static_cast<Eigen::Index>(S) * T;
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

  auto emb = tensor("embedding");
  acts.x0 = Eigen::MatrixXd::Zero(d, cols);
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < batch.valid_len[s]; ++t) {
      acts.x0.col(static_cast<Eigen::Index>(s) * T + t) =
          emb.col(batch.seqs[s][t]) * sqrt_d + positional_.col(t);
    }
  }

  acts.layers.assign(config_.layers, LayerActs{});
  const Eigen::MatrixXd* x_in = &acts.x0;
  for (int l = 0; l < config_.layers; ++l) {
    LayerActs& lay = acts.layers[l];
    const std::string p = "layers." + std::to_string(l) + ".";

    layer_norm_forward(*x_in, tensor(p + "ln1.gamma").col(0),
                       tensor(p + "ln1.beta").col(0), lay.a, lay.mu1,
                       lay.inv1);

    lay.q.noalias() = tensor(p + "attn.wq") * lay.a;
    lay.q.colwise() += tensor(p + "attn.bq").col(0);
    lay.k.noalias() = tensor(p + "attn.wk") * lay.a;
    lay.k.colwise() += tensor(p + "attn.bk").col(0);
    lay.v.noalias() = tensor(p + "attn.wv") * lay.a;
    lay.v.colwise() += tensor(p + "attn.bv").col(0);

    lay.att.assign(static_cast<std::size_t>(S) * H, Eigen::MatrixXd());
    lay.o = Eigen::MatrixXd::Zero(d, cols);
    for (int s = 0; s < S; ++s) {
      const int vl = batch.valid_len[s];
      for (int h = 0; h < H; ++h) {
        auto qs = lay.q.block(h * dh, static_cast<Eigen::Index>(s) * T, dh, T);
        auto ks = lay.k.block(h * dh, static_cast<Eigen::Index>(s) * T, dh, T);
        auto vs = lay.v.block(h * dh, static_cast<Eigen::Index>(s) * T, dh, T);
        Eigen::MatrixXd scores = (qs.transpose() * ks) * inv_sqrt_dh;
        Eigen::MatrixXd& att = lay.att[static_cast<std::size_t>(s) * H + h];
        att = Eigen::MatrixXd::Zero(T, T);
        // Keys at or past valid_len keep exactly zero weight.
        for (int t = 0; t < T; ++t) {
          double mx = scores(t, 0);
          for (int u = 1; u < vl; ++u) mx = std::max(mx, scores(t, u));
          double sum = 0.0;
          for (int u = 0; u < vl; ++u) {
            double e = std::exp(scores(t, u) - mx);
            att(t, u) = e;
            sum += e;
          }
          for (int u = 0; u < vl; ++u) att(t, u) /= sum;
        }
        lay.o.block(h * dh, static_cast<Eigen::Index>(s) * T, dh, T)
            .noalias() = vs * att.transpose();
      }
    }

    Eigen::MatrixXd proj = tensor(p + "attn.wo") * lay.o;
    proj.colwise() += tensor(p + "attn.bo").col(0);
    lay.x_mid = *x_in + proj;

    layer_norm_forward(lay.x_mid, tensor(p + "ln2.gamma").col(0),
                       tensor(p + "ln2.beta").col(0), lay.bn, lay.mu2,
                       lay.inv2);
    lay.f1.noalias() = tensor(p + "ff.w1") * lay.bn;
    lay.f1.colwise() += tensor(p + "ff.b1").col(0);
    lay.g = lay.f1.unaryExpr([](double x) { return gelu(x); });
    Eigen::MatrixXd f2 = tensor(p + "ff.w2") * lay.g;
    f2.colwise() += tensor(p + "ff.b2").col(0);
    lay.x_out = lay.x_mid + f2;
    x_in = &lay.x_out;
  }

  layer_norm_forward(*x_in, tensor("final_ln.gamma").col(0),
                     tensor("final_ln.beta").col(0), acts.y, acts.mu_f,
                     acts.inv_f);

  const int feat_dim = config_.feature_dim();
  const int B = batch.examples;
  acts.features.resize(feat_dim, B);
  for (int e = 0; e < B; ++e) {
    if (config_.mode == EncodingMode::kConcat) {
      acts.features.col(e) = acts.y.col(static_cast<Eigen::Index>(e) * T);
    } else {
      acts.features.col(e).head(d) =
          acts.y.col(static_cast<Eigen::Index>(2 * e) * T);
      acts.features.col(e).tail(d) =
          acts.y.col(static_cast<Eigen::Index>(2 * e + 1) * T);
    }
  }

  auto w = tensor("head.weight");
  const double bias = tensor("head.bias")(0, 0);
  acts.preds.resize(B);
  for (int e = 0; e < B; ++e) {
    acts.preds[e] = w.col(0).dot(acts.features.col(e)) + bias;
  }
}

Eigen::VectorXd Model::encode(const std::string& source,
                              const std::string& hypothesis) const {
  Activations acts;
  acts.batch = make_batch({{&source, &hypothesis}});
  run_forward(acts);
  return acts.features.col(0);
}

double Model::forward_loss(const std::vector<const QeTuple*>& batch,
                           std::vector<double>* predictions) {
  if (batch.empty()) throw Error("forward_loss: empty batch");
  std::vector<std::pair<const std::string*, const std::string*>> pairs;
  pairs.reserve(batch.size());
  for (const QeTuple* t : batch) {
    pairs.emplace_back(&t->source, &t->hypothesis);
  }
  acts_ = Activations{};
  acts_.batch = make_batch(pairs);
  run_forward(acts_);

  const std::size_t n = batch.size();
  acts_.labels.resize(n);
  double mse = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    acts_.labels[e] = batch[e]->label;
    double r = acts_.preds[e] - acts_.labels[e];
    mse += r * r;
  }
  mse /= static_cast<double>(n);
  acts_.loss = std::sqrt(mse);
  has_acts_ = true;
  if (predictions) *predictions = acts_.preds;
  return acts_.loss;
}

Eigen::VectorXd Model::backward() const {
  if (!has_acts_) {
    throw Error("backward: no cached forward pass");
  }
  const Activations& acts = acts_;
  const EncodedBatch& batch = acts.batch;
  const int S = static_cast<int>(batch.seqs.size());
  const int T = batch.max_len;
  const int d = config_.embed_dim;
  const int H = config_.heads;
  const int dh = d / H;
  const int B = batch.examples;
  const Eigen::Index cols = static_cast<Eigen::Index>(S) * T;
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

  Eigen::VectorXd grads = Eigen::VectorXd::Zero(layout_.total_size());

  // d loss / d pred; the zero-residual subgradient is zero.
  std::vector<double> dpred(B, 0.0);
  if (acts.loss > 0.0) {
    for (int e = 0; e < B; ++e) {
      dpred[e] = (acts.preds[e] - acts.labels[e]) /
                 (static_cast<double>(B) * acts.loss);
    }
  }

  auto w = tensor("head.weight");
  auto dw = grad_tensor(grads, "head.weight");
  auto db = grad_tensor(grads, "head.bias");
  const int feat_dim = config_.feature_dim();
  Eigen::MatrixXd dfeat(feat_dim, B);
  for (int e = 0; e < B; ++e) {
    dfeat.col(e) = w.col(0) * dpred[e];
    dw.col(0) += acts.features.col(e) * dpred[e];
    db(0, 0) += dpred[e];
  }

  Eigen::MatrixXd dy = Eigen::MatrixXd::Zero(d, cols);
  for (int e = 0; e < B; ++e) {
    if (config_.mode == EncodingMode::kConcat) {
      dy.col(static_cast<Eigen::Index>(e) * T) = dfeat.col(e);
    } else {
      dy.col(static_cast<Eigen::Index>(2 * e) * T) = dfeat.col(e).head(d);
      dy.col(static_cast<Eigen::Index>(2 * e + 1) * T) = dfeat.col(e).tail(d);
    }
  }

  const Eigen::MatrixXd& x_last =
      acts.layers.empty() ? acts.x0 : acts.layers.back().x_out;
  Eigen::MatrixXd dx = Eigen::MatrixXd::Zero(d, cols);
  layer_norm_backward(dy, x_last, acts.mu_f, acts.inv_f,
                      tensor("final_ln.gamma").col(0),
                      grad_tensor(grads, "final_ln.gamma"),
                      grad_tensor(grads, "final_ln.beta"), dx);

  for (int l = config_.layers - 1; l >= 0; --l) {
    const LayerActs& lay = acts.layers[l];
    const std::string p = "layers." + std::to_string(l) + ".";

    // Feed-forward branch of x_out = x_mid + ff(ln2(x_mid)).
    Eigen::MatrixXd dg = tensor(p + "ff.w2").transpose() * dx;
    grad_tensor(grads, p + "ff.w2").noalias() += dx * lay.g.transpose();
    grad_tensor(grads, p + "ff.b2").col(0) += dx.rowwise().sum();
    Eigen::MatrixXd df1 =
        dg.cwiseProduct(lay.f1.unaryExpr([](double x) { return gelu_grad(x); }));
    grad_tensor(grads, p + "ff.w1").noalias() += df1 * lay.bn.transpose();
    grad_tensor(grads, p + "ff.b1").col(0) += df1.rowwise().sum();
    Eigen::MatrixXd dbn = tensor(p + "ff.w1").transpose() * df1;

    Eigen::MatrixXd dx_mid = dx;  // residual term
    layer_norm_backward(dbn, lay.x_mid, lay.mu2, lay.inv2,
                        tensor(p + "ln2.gamma").col(0),
                        grad_tensor(grads, p + "ln2.gamma"),
                        grad_tensor(grads, p + "ln2.beta"), dx_mid);

    // Attention branch of x_mid = x_in + proj(attn(ln1(x_in))).
    Eigen::MatrixXd dout = tensor(p + "attn.wo").transpose() * dx_mid;
    grad_tensor(grads, p + "attn.wo").noalias() += dx_mid * lay.o.transpose();
    grad_tensor(grads, p + "attn.bo").col(0) += dx_mid.rowwise().sum();

    Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(d, cols);
    Eigen::MatrixXd dk = Eigen::MatrixXd::Zero(d, cols);
    Eigen::MatrixXd dv = Eigen::MatrixXd::Zero(d, cols);
    for (int s = 0; s < S; ++s) {
      const int vl = batch.valid_len[s];
      for (int h = 0; h < H; ++h) {
        const Eigen::Index off = static_cast<Eigen::Index>(s) * T;
        const Eigen::MatrixXd& att =
            lay.att[static_cast<std::size_t>(s) * H + h];
        auto dob = dout.block(h * dh, off, dh, T);
        auto qs = lay.q.block(h * dh, off, dh, T);
        auto ks = lay.k.block(h * dh, off, dh, T);
        auto vs = lay.v.block(h * dh, off, dh, T);

        dv.block(h * dh, off, dh, T).noalias() = dob * att;
        Eigen::MatrixXd datt = dob.transpose() * vs;  // datt(t, u)
        Eigen::MatrixXd ds = Eigen::MatrixXd::Zero(T, T);
        for (int t = 0; t < T; ++t) {
          double dot = 0.0;
          for (int u = 0; u < vl; ++u) dot += datt(t, u) * att(t, u);
          for (int u = 0; u < vl; ++u) {
            ds(t, u) = att(t, u) * (datt(t, u) - dot);
          }
        }
        ds *= inv_sqrt_dh;
        dq.block(h * dh, off, dh, T).noalias() = ks * ds.transpose();
        dk.block(h * dh, off, dh, T).noalias() = qs * ds;
      }
    }

    grad_tensor(grads, p + "attn.wq").noalias() += dq * lay.a.transpose();
    grad_tensor(grads, p + "attn.bq").col(0) += dq.rowwise().sum();
    grad_tensor(grads, p + "attn.wk").noalias() += dk * lay.a.transpose();
    grad_tensor(grads, p + "attn.bk").col(0) += dk.rowwise().sum();
    grad_tensor(grads, p + "attn.wv").noalias() += dv * lay.a.transpose();
    grad_tensor(grads, p + "attn.bv").col(0) += dv.rowwise().sum();

    Eigen::MatrixXd da = tensor(p + "attn.wq").transpose() * dq;
    da.noalias() += tensor(p + "attn.wk").transpose() * dk;
    da.noalias() += tensor(p + "attn.wv").transpose() * dv;

    const Eigen::MatrixXd& x_in =
        l == 0 ? acts.x0 : acts.layers[l - 1].x_out;
    Eigen::MatrixXd dx_prev = dx_mid;  // residual term
    layer_norm_backward(da, x_in, lay.mu1, lay.inv1,
                        tensor(p + "ln1.gamma").col(0),
                        grad_tensor(grads, p + "ln1.gamma"),
                        grad_tensor(grads, p + "ln1.beta"), dx_prev);
    dx = std::move(dx_prev);
  }

  auto demb = grad_tensor(grads, "embedding");
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < batch.valid_len[s]; ++t) {
      demb.col(batch.seqs[s][t]) +=
          dx.col(static_cast<Eigen::Index>(s) * T + t) * sqrt_d;
    }
  }
  return grads;
}

std::vector<double> Model::predict(
    const std::vector<std::pair<std::string, std::string>>& pairs) const {
  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (std::size_t begin = 0; begin < pairs.size(); begin += kPredictChunk) {
    std::size_t end = std::min(pairs.size(),
                               begin + static_cast<std::size_t>(kPredictChunk));
    std::vector<std::pair<const std::string*, const std::string*>> chunk;
    chunk.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      chunk.emplace_back(&pairs[i].first, &pairs[i].second);
    }
    Activations acts;
    acts.batch = make_batch(chunk);
    run_forward(acts);
    scores.insert(scores.end(), acts.preds.begin(), acts.preds.end());
  }
  return scores;
}

std::vector<Eigen::MatrixXd> Model::attention_maps(
    const std::string& source, const std::string& hypothesis) const {
  Activations acts;
  acts.batch = make_batch({{&source, &hypothesis}});
  run_forward(acts);
  std::vector<Eigen::MatrixXd> maps;
  maps.reserve(acts.layers.size() * acts.batch.seqs.size());
  for (const LayerActs& lay : acts.layers) {
    for (std::size_t s = 0; s < acts.batch.seqs.size(); ++s) {
      const int vl = acts.batch.valid_len[s];
      for (int h = 0; h < config_.heads; ++h) {
        Eigen::MatrixXd att =
            lay.att[s * static_cast<std::size_t>(config_.heads) +
                    static_cast<std::size_t>(h)];
        // Padded-query rows are computed but never consumed; blank them so
        // callers see only meaningful rows.
        for (Eigen::Index t = vl; t < att.rows(); ++t) att.row(t).setZero();
        maps.push_back(std::move(att));
      }
    }
  }
  return maps;
}

}  // namespace tqe
