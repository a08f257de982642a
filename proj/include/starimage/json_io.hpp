#ifndef STARIMAGE_JSON_IO_HPP
#define STARIMAGE_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "starimage/matrix.hpp"

namespace starimage {

using json = nlohmann::json;

/// Matrix wire format: {"n": int, "entries": [[scalar,...],...]} where a
/// scalar is a JSON number (real backend) or a "p/q" string (exact backend).
template <class S>
Matrix<S> matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw DomainError("matrix JSON needs fields \"n\" and \"entries\"");
  int n = j.at("n").get<int>();
  if (n < 1) throw DomainError("matrix dimension must be >= 1");
  const json& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw DomainError("matrix JSON entries must be an n-row array");
  Matrix<S> m(n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw DomainError("matrix JSON row " + std::to_string(i) +
                        " must have n entries");
    for (int k = 0; k < n; ++k) {
      const json& e = row.at(k);
      if constexpr (scalar_traits<S>::exact) {
        if (e.is_string())
          m(i, k) = parse_rational(e.get<std::string>());
        else if (e.is_number_integer())
          m(i, k) = Rational(e.get<long long>());
        else
          throw DomainError("exact backend needs integer or \"p/q\" entries");
      } else {
        if (e.is_number())
          m(i, k) = e.get<double>();
        else if (e.is_string())
          m(i, k) = scalar_traits<Rational>::to_double(
              parse_rational(e.get<std::string>()));
        else
          throw DomainError("real backend needs numeric entries");
      }
    }
  }
  return m;
}

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.dim(); ++k) {
      if constexpr (scalar_traits<S>::exact)
        row.push_back(scalar_traits<S>::to_string(m(i, k)));
      else
        row.push_back(m(i, k));
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", m.dim()}, {"entries", std::move(rows)}};
}

}  // namespace starimage

#endif
