#include "mpinv/json_io.hpp"

#include <cmath>

namespace mpinv {

Json to_json(const Matrix& m) {
  Json data = Json::array();
  for (const Complex& z : m.data()) data.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace {

std::size_t positive_dim(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Parse, std::string("matrix: missing \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw Error(ErrorCode::Parse, std::string("matrix: \"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "matrix: expected a JSON object");
  const std::size_t rows = positive_dim(j, "rows");
  const std::size_t cols = positive_dim(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw Error(ErrorCode::Parse, "matrix: \"data\" must be an array");
  }
  const Json& data = j.at("data");
  if (data.size() != rows * cols) {
    throw Error(ErrorCode::Parse, "matrix: \"data\" has " + std::to_string(data.size()) +
                                      " entries, expected " + std::to_string(rows * cols));
  }
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const Json& e : data) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::Parse, "matrix: each entry must be a [re, im] pair of numbers");
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw Error(ErrorCode::NonFinite, "matrix: non-finite entry");
    }
    entries.emplace_back(re, im);
  }
  return Matrix(rows, cols, std::move(entries));
}

Matrix parse_matrix(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

Json to_json(const Tolerance& t) {
  return Json{{"rank_tol_factor", t.rank_tol_factor}, {"eq_tol", t.eq_tol}};
}

Json to_json(const PenroseResiduals& r) {
  Json rel, abs;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string key = "r" + std::to_string(k + 1);
    rel[key] = r.relative[k];
    abs[key] = r.absolute[k];
  }
  return Json{{"relative", std::move(rel)}, {"absolute", std::move(abs)}};
}

Json to_json(const PinvResult& r) {
  return Json{{"pinv", to_json(r.pinv)}, {"rank", r.rank}, {"residuals", to_json(r.residuals)}};
}

Json to_json(const ConditionReport& r) {
  Json verdicts = Json::object(), residuals = Json::object();
  for (const auto& v : r.verdicts) {
    verdicts[v.name] = v.holds;
    residuals[v.name] = v.residual;
  }
  return Json{{"verdicts", std::move(verdicts)},
              {"residuals", std::move(residuals)},
              {"tolerance_used", to_json(r.tolerance)}};
}

Json to_json(const RolReport& r) {
  Json j = to_json(r.conditions);
  j["ranks"] = Json{{"a", r.rank_a}, {"b", r.rank_b}, {"ab", r.rank_ab}};
  return j;
}

Json to_json(const ClassificationReport& r) {
  return Json{{"regular", r.regular},
              {"hermitian", r.hermitian},
              {"normal", r.normal},
              {"partial_isometry", r.partial_isometry},
              {"mp_hermitian", r.mp_hermitian},
              {"op_norm", r.op_norm},
              {"pinv_norm", r.pinv_norm},
              {"conorm", r.conorm ? Json(*r.conorm) : Json(nullptr)},
              {"rank", r.rank}};
}

namespace {

Json basis_json(const SubspaceBasis& b) {
  return Json{{"dim", b.dim()}, {"basis", b.dim() ? to_json(b.columns) : Json(nullptr)}};
}

}  // namespace

Json to_json(const MphDecomposition& d) {
  return Json{{"h1", basis_json(d.h1)},
              {"h2", basis_json(d.h2)},
              {"t2", d.t2.rows() ? to_json(d.t2) : Json(nullptr)},
              {"orthogonality_residual", d.orthogonality_residual},
              {"involution_residual", d.involution_residual},
              {"reconstruction_residual", d.reconstruction_residual}};
}

Json to_json(const FuzzFailure& f) {
  Json matrices = Json::object();
  for (const auto& [name, m] : f.matrices) matrices[name] = to_json(m);
  Json residuals = Json::object();
  for (const auto& [name, v] : f.residuals) residuals[name] = v;
  return Json{{"suite", std::string(to_string(f.suite))},
              {"seed", f.seed},
              {"trial_index", f.trial_index},
              {"condition_pair", f.condition_pair},
              {"residuals", std::move(residuals)},
              {"matrices", std::move(matrices)}};
}

Json to_json(const FuzzReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  Json j{{"suite", std::string(to_string(r.suite))},
         {"trials_run", r.trials_run},
         {"failures", std::move(failures)},
         {"elapsed", r.elapsed},
         {"stats", std::move(stats)}};
  if (!r.trials.empty()) {
    Json trials = Json::array();
    for (const auto& t : r.trials) {
      Json verdicts = Json::object();
      for (const auto& [k, v] : t.verdicts) verdicts[k] = v;
      trials.push_back(Json{{"suite", std::string(to_string(t.suite))},
                            {"trial_index", t.trial_index},
                            {"family", t.family},
                            {"verdicts", std::move(verdicts)}});
    }
    j["trials"] = std::move(trials);
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace mpinv
