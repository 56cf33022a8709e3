// swan/params.cpp

#include "swan/params.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "swan/rng.hpp"

namespace swan {

using nlohmann::json;

GruCellParams GruCellParams::zeros(int input, int hidden) {
  GruCellParams c;
  c.Wz = Eigen::MatrixXd::Zero(hidden, input);
  c.Wr = Eigen::MatrixXd::Zero(hidden, input);
  c.Wn = Eigen::MatrixXd::Zero(hidden, input);
  c.Uz = Eigen::MatrixXd::Zero(hidden, hidden);
  c.Ur = Eigen::MatrixXd::Zero(hidden, hidden);
  c.Un = Eigen::MatrixXd::Zero(hidden, hidden);
  c.bz = Eigen::VectorXd::Zero(hidden);
  c.br = Eigen::VectorXd::Zero(hidden);
  c.bn = Eigen::VectorXd::Zero(hidden);
  return c;
}

static SegmentScorerParams allocate(const ModelConfig& cfg) {
  cfg.validate();
  SegmentScorerParams p;
  p.cfg = cfg;
  p.embed = Eigen::MatrixXd::Zero(cfg.V + 1, cfg.E);
  for (int l = 0; l < cfg.seg_depth; ++l)
    p.seg_cell.push_back(GruCellParams::zeros(l == 0 ? cfg.E : cfg.H, cfg.H));
  p.out_w = Eigen::MatrixXd::Zero(cfg.V + 1, cfg.H);
  p.out_b = Eigen::VectorXd::Zero(cfg.V + 1);
  for (int l = 0; l < cfg.conn_depth; ++l)
    p.conn_cell.push_back(GruCellParams::zeros(l == 0 ? cfg.E : cfg.Hc, cfg.Hc));
  p.conn_proj = Eigen::MatrixXd::Zero(cfg.H, cfg.Hc);
  p.in_proj = Eigen::MatrixXd::Zero(cfg.H, cfg.d);
  if (cfg.use_encoder) p.enc_cell.push_back(GruCellParams::zeros(cfg.d, cfg.d));
  return p;
}

std::size_t SegmentScorerParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : tensor_refs(const_cast<SegmentScorerParams&>(*this)))
    n += static_cast<std::size_t>(t.size());
  return n;
}

SegmentScorerParams init_params(const ModelConfig& cfg, std::uint64_t seed) {
  SegmentScorerParams p = allocate(cfg);
  Rng rng(seed);
  for (auto& t : tensor_refs(p))
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data[i] = rng.uniform(-0.08, 0.08);
  return p;
}

SegmentScorerParams zeros_like(const SegmentScorerParams& p) { return allocate(p.cfg); }

static void cell_refs(const std::string& prefix, GruCellParams& c,
                      std::vector<TensorRef>& out) {
  auto add = [&](const char* n, Eigen::MatrixXd& m) {
    out.push_back({prefix + n, m.data(), m.rows(), m.cols()});
  };
  auto addv = [&](const char* n, Eigen::VectorXd& v) {
    out.push_back({prefix + n, v.data(), v.size(), 1});
  };
  add("Wz", c.Wz); add("Wr", c.Wr); add("Wn", c.Wn);
  add("Uz", c.Uz); add("Ur", c.Ur); add("Un", c.Un);
  addv("bz", c.bz); addv("br", c.br); addv("bn", c.bn);
}

std::vector<TensorRef> tensor_refs(SegmentScorerParams& p) {
  std::vector<TensorRef> out;
  out.push_back({"embed", p.embed.data(), p.embed.rows(), p.embed.cols()});
  for (std::size_t l = 0; l < p.seg_cell.size(); ++l)
    cell_refs(fmt::format("seg.{}.", l), p.seg_cell[l], out);
  out.push_back({"out.W", p.out_w.data(), p.out_w.rows(), p.out_w.cols()});
  out.push_back({"out.b", p.out_b.data(), p.out_b.size(), 1});
  for (std::size_t l = 0; l < p.conn_cell.size(); ++l)
    cell_refs(fmt::format("conn.{}.", l), p.conn_cell[l], out);
  out.push_back({"conn_proj", p.conn_proj.data(), p.conn_proj.rows(), p.conn_proj.cols()});
  out.push_back({"in_proj", p.in_proj.data(), p.in_proj.rows(), p.in_proj.cols()});
  for (std::size_t l = 0; l < p.enc_cell.size(); ++l)
    cell_refs(fmt::format("enc.{}.", l), p.enc_cell[l], out);
  return out;
}

Eigen::VectorXd flatten_params(const SegmentScorerParams& p) {
  auto refs = tensor_refs(const_cast<SegmentScorerParams&>(p));
  Eigen::Index n = 0;
  for (const auto& t : refs) n += t.size();
  Eigen::VectorXd flat(n);
  Eigen::Index at = 0;
  for (const auto& t : refs) {
    flat.segment(at, t.size()) = Eigen::Map<const Eigen::VectorXd>(t.data, t.size());
    at += t.size();
  }
  return flat;
}

void unflatten_params(const Eigen::VectorXd& flat, SegmentScorerParams& p) {
  auto refs = tensor_refs(p);
  Eigen::Index at = 0;
  for (auto& t : refs) {
    if (at + t.size() > flat.size()) throw std::invalid_argument("unflatten_params: size mismatch");
    Eigen::Map<Eigen::VectorXd>(t.data, t.size()) = flat.segment(at, t.size());
    at += t.size();
  }
  if (at != flat.size()) throw std::invalid_argument("unflatten_params: size mismatch");
}

void axpy_params(double scale, const SegmentScorerParams& b, SegmentScorerParams& a) {
  auto ra = tensor_refs(a);
  auto rb = tensor_refs(const_cast<SegmentScorerParams&>(b));
  if (ra.size() != rb.size()) throw std::invalid_argument("axpy_params: layout mismatch");
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].size() != rb[i].size()) throw std::invalid_argument("axpy_params: shape mismatch");
    Eigen::Map<Eigen::VectorXd>(ra[i].data, ra[i].size()) +=
        scale * Eigen::Map<const Eigen::VectorXd>(rb[i].data, rb[i].size());
  }
}

std::string first_nonfinite_tensor(const SegmentScorerParams& p) {
  for (const auto& t : tensor_refs(const_cast<SegmentScorerParams&>(p)))
    for (Eigen::Index i = 0; i < t.size(); ++i)
      if (!std::isfinite(t.data[i])) return t.name;
  return "";
}

// --- Checkpoint ------------------------------------------------------------

static json config_to_json(const ModelConfig& c) {
  return json{{"V", c.V},   {"d", c.d},   {"H", c.H},   {"Hc", c.Hc},
              {"L", c.L},   {"E", c.E},   {"seg_depth", c.seg_depth},
              {"conn_depth", c.conn_depth}, {"use_encoder", c.use_encoder}};
}

static ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  c.V = j.at("V").get<int>();
  c.d = j.at("d").get<int>();
  c.H = j.at("H").get<int>();
  c.Hc = j.at("Hc").get<int>();
  c.L = j.at("L").get<int>();
  c.E = j.at("E").get<int>();
  c.seg_depth = j.value("seg_depth", 1);
  c.conn_depth = j.value("conn_depth", 1);
  c.use_encoder = j.value("use_encoder", false);
  return c;
}

void save_checkpoint(const Checkpoint& ck, const std::string& path) {
  json j;
  j["format"] = "swan-checkpoint-v1";
  j["config"] = config_to_json(ck.params.cfg);
  if (ck.has_out_vocab) j["out_vocab"] = ck.out_vocab.tokens();
  if (!ck.in_vocab.empty()) j["in_vocab"] = ck.in_vocab;
  json tensors = json::object();
  for (const auto& t : tensor_refs(const_cast<SegmentScorerParams&>(ck.params))) {
    json jt;
    jt["rows"] = t.rows;
    jt["cols"] = t.cols;
    jt["data"] = std::vector<double>(t.data, t.data + t.size());
    tensors[t.name] = std::move(jt);
  }
  j["tensors"] = std::move(tensors);
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write checkpoint {}", path));
  out << j.dump() << '\n';
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open checkpoint {}", path));
  json j = json::parse(in);
  if (j.value("format", "") != "swan-checkpoint-v1")
    throw std::runtime_error(fmt::format("{}: not a swan checkpoint", path));
  Checkpoint ck;
  ck.params = allocate(config_from_json(j.at("config")));
  if (j.contains("out_vocab")) {
    ck.out_vocab = Vocab::from_tokens(j.at("out_vocab").get<std::vector<std::string>>());
    ck.has_out_vocab = true;
  }
  if (j.contains("in_vocab")) ck.in_vocab = j.at("in_vocab").get<std::vector<std::string>>();
  const auto& tensors = j.at("tensors");
  for (auto& t : tensor_refs(ck.params)) {
    const auto& jt = tensors.at(t.name);
    if (jt.at("rows").get<Eigen::Index>() != t.rows ||
        jt.at("cols").get<Eigen::Index>() != t.cols)
      throw std::runtime_error(fmt::format("checkpoint tensor {} has unexpected shape", t.name));
    auto data = jt.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != t.size())
      throw std::runtime_error(fmt::format("checkpoint tensor {} has unexpected size", t.name));
    std::copy(data.begin(), data.end(), t.data);
  }
  return ck;
}

}  // namespace swan
