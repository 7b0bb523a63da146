#include "gbo/field.hpp"

#include <algorithm>
#include <cmath>

namespace gbo {

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "field addition");
  std::vector<complexd> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return Field(a.grid(), std::move(v), combine_tags(a.tag(), b.tag()));
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "field subtraction");
  std::vector<complexd> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return Field(a.grid(), std::move(v), combine_tags(a.tag(), b.tag()));
}

Field operator*(double s, const Field& a) {
  std::vector<complexd> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a[i];
  return Field(a.grid(), std::move(v), a.tag());
}

Field operator*(complexd s, const Field& a) {
  std::vector<complexd> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a[i];
  const Parity tag = (s.imag() == 0.0) ? a.tag() : Parity::Complex;
  return Field(a.grid(), std::move(v), tag);
}

Field pointwise_product(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise product");
  std::vector<complexd> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return Field(a.grid(), std::move(v), combine_tags(a.tag(), b.tag()));
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(f.grid().dx() * s);
}

double linf_norm(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

complexd mean_value(const Field& f) {
  complexd s = 0.0;
  for (const auto& v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

double linf_distance(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "field distance");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double l2_distance(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "field distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(a.grid().dx() * s);
}

}  // namespace gbo
