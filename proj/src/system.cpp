#include "altprod/system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "altprod/errors.hpp"

namespace altprod {

namespace {

using nlohmann::json;

std::string shape_of(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void validate_alphabet(const std::vector<Matrix>& set, std::size_t rows, std::size_t cols,
                       std::string_view name) {
  if (set.empty()) {
    throw Error(ErrorCode::EmptyAlphabet, std::string(name) + " alphabet is empty");
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i].rows() != rows || set[i].cols() != cols) {
      throw Error(ErrorCode::ShapeError,
                  std::string(name) + "[" + std::to_string(i) + "] is " + shape_of(set[i]) +
                      ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (set[i] == set[j]) {
        throw Error(ErrorCode::DuplicateMatrix, std::string(name) + "[" + std::to_string(i) +
                                                    "] duplicates " + std::string(name) + "[" +
                                                    std::to_string(j) + "]");
      }
    }
  }
}

std::vector<Matrix> parse_alphabet(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  }
  const json& list = doc.at(key);
  if (!list.is_array()) {
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be an array");
  }
  std::vector<Matrix> out;
  for (const json& entry : list) {
    if (!entry.is_array()) {
      throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" entries must be 2-D arrays");
    }
    std::vector<std::vector<double>> rows;
    for (const json& row : entry) {
      if (!row.is_array()) {
        throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" rows must be arrays");
      }
      std::vector<double> values;
      for (const json& v : row) {
        if (!v.is_number()) {
          throw Error(ErrorCode::ParseError, std::string("non-numeric entry in \"") + key + "\"");
        }
        values.push_back(v.get<double>());
      }
      rows.push_back(std::move(values));
    }
    out.push_back(Matrix::from_rows(rows));
  }
  return out;
}

std::size_t parse_dim(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer() || doc.at(key).get<long long>() < 1) {
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be a positive integer");
  }
  return doc.at(key).get<std::size_t>();
}

}  // namespace

std::string_view to_string(Orientation orientation) {
  return orientation == Orientation::RightProducts ? "right" : "left";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "right") return Orientation::RightProducts;
  if (text == "left") return Orientation::LeftProducts;
  throw Error(ErrorCode::ParseError, "unknown orientation \"" + std::string(text) + "\"");
}

AlternatingSystem::AlternatingSystem(std::size_t n, std::size_t m, std::vector<Matrix> a_set,
                                     std::vector<Matrix> b_set, NormKind norm,
                                     Orientation orientation)
    : n_(n),
      m_(m),
      a_set_(std::move(a_set)),
      b_set_(std::move(b_set)),
      norm_(norm),
      orientation_(orientation) {
  validate_alphabet(a_set_, n_, m_, "A");
  validate_alphabet(b_set_, m_, n_, "B");
  steps_.reserve(a_set_.size() * b_set_.size());
  for (const Matrix& a : a_set_) {
    for (const Matrix& b : b_set_) {
      steps_.push_back(orientation_ == Orientation::RightProducts ? a * b : b * a);
    }
  }
}

AlternatingSystem AlternatingSystem::with_norm(NormKind norm) const {
  return AlternatingSystem(n_, m_, a_set_, b_set_, norm, orientation_);
}

AlternatingSystem load_system(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "system document must be an object");

  const std::size_t n = parse_dim(doc, "N");
  const std::size_t m = parse_dim(doc, "M");
  NormKind norm = NormKind::MaxRow;
  if (doc.contains("norm")) {
    if (!doc.at("norm").is_string()) throw Error(ErrorCode::ParseError, "\"norm\" must be a string");
    norm = parse_norm_kind(doc.at("norm").get<std::string>());
  }
  Orientation orientation = Orientation::RightProducts;
  if (doc.contains("orientation")) {
    if (!doc.at("orientation").is_string()) {
      throw Error(ErrorCode::ParseError, "\"orientation\" must be a string");
    }
    orientation = parse_orientation(doc.at("orientation").get<std::string>());
  }
  return AlternatingSystem(n, m, parse_alphabet(doc, "A"), parse_alphabet(doc, "B"), norm,
                           orientation);
}

AlternatingSystem load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_system(buffer.str());
}

std::string save_system(const AlternatingSystem& system) {
  json doc;
  doc["N"] = system.n();
  doc["M"] = system.m();
  doc["A"] = json::array();
  for (const Matrix& a : system.a_set()) doc["A"].push_back(a.to_rows());
  doc["B"] = json::array();
  for (const Matrix& b : system.b_set()) doc["B"].push_back(b.to_rows());
  doc["norm"] = to_string(system.norm());
  doc["orientation"] = to_string(system.orientation());
  return doc.dump();
}

AlternatingSystem flip_orientation(const AlternatingSystem& system) {
  const Orientation flipped = system.orientation() == Orientation::RightProducts
                                  ? Orientation::LeftProducts
                                  : Orientation::RightProducts;
  return AlternatingSystem(system.n(), system.m(), system.a_set(), system.b_set(), system.norm(),
                           flipped);
}

HypothesisReport check_hypotheses(const AlternatingSystem& system) {
  HypothesisReport report;
  const bool right = system.orientation() == Orientation::RightProducts;
  const std::size_t na = system.a_set().size();
  const std::size_t nb = system.b_set().size();

  // AB is N x N with rank <= min(N, M); BA is M x M with rank <= min(N, M).
  const bool rank_allows = right ? system.n() <= system.m() : system.m() <= system.n();
  if (!rank_allows) {
    report.invertible = false;
    report.gamma_inv = 0.0;
    report.invertible_reason =
        right ? "N > M: det(AB) vanishes for every pair; try the left orientation"
              : "M > N: det(BA) vanishes for every pair; try the right orientation";
  } else {
    double gamma_inv = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < nb; ++b) {
        gamma_inv = std::min(gamma_inv, std::abs(determinant(system.step(a, b))));
      }
    }
    report.gamma_inv = gamma_inv;
    report.invertible = gamma_inv > kInvertibilityCutoff;
    if (!report.invertible) report.invertible_reason = "some one-step product is singular";
  }

  report.nonnegative =
      std::all_of(system.a_set().begin(), system.a_set().end(), is_nonnegative) &&
      std::all_of(system.b_set().begin(), system.b_set().end(), is_nonnegative);

  double gamma_ab = std::numeric_limits<double>::infinity();
  for (const Matrix& a : system.a_set()) gamma_ab = std::min(gamma_ab, min_row_sum(a));
  for (const Matrix& b : system.b_set()) gamma_ab = std::min(gamma_ab, min_row_sum(b));
  double gamma_f = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) gamma_f = std::min(gamma_f, min_row_sum(system.step(a, b)));
  }
  report.gamma_ab = gamma_ab;
  report.gamma_f = gamma_f;
  report.gamma = std::min(gamma_ab, gamma_f);
  report.nonzero_rows = gamma_ab > 0.0 && gamma_f > 0.0;

  for (const Matrix& a : system.a_set()) report.a_bound = std::max(report.a_bound, system.norm_of(a));
  for (const Matrix& b : system.b_set()) report.b_bound = std::max(report.b_bound, system.norm_of(b));
  return report;
}

}  // namespace altprod
