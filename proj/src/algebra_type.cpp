#include "twq/algebra_type.hpp"

#include <gmpxx.h>

#include <set>
#include <stdexcept>

namespace twq {

AlgebraType AlgebraType::make(Family f, int r) {
  switch (f) {
    case Family::A2t2:
      return AlgebraType(f, 1);
    case Family::E6t2:
      return AlgebraType(f, 4);
    case Family::D4t3:
      return AlgebraType(f, 2);
    case Family::A2t2odd:
      if (r < 3) throw std::invalid_argument("A2t2odd needs r >= 3");
      return AlgebraType(f, r);
    case Family::A2t2even:
      if (r == 1) return AlgebraType(Family::A2t2, 1);
      if (r < 1) throw std::invalid_argument("A2t2even needs r >= 1");
      return AlgebraType(f, r);
    case Family::Dt2:
      if (r < 2) throw std::invalid_argument("Dt2 needs r >= 2");
      return AlgebraType(f, r);
  }
  throw std::invalid_argument("unknown family");
}

AlgebraType AlgebraType::parse(const std::string& tag, int r) {
  if (tag == "A2t2odd" || tag == "A2t1odd") return make(Family::A2t2odd, r);
  if (tag == "A2t2even") return make(Family::A2t2even, r);
  if (tag == "A2t2") return make(Family::A2t2, r);
  if (tag == "Dt2") return make(Family::Dt2, r);
  if (tag == "E6t2") return make(Family::E6t2, r);
  if (tag == "D4t3") return make(Family::D4t3, r);
  throw std::invalid_argument("unknown type tag: " + tag);
}

AlgebraType::AlgebraType(Family f, int r) : f_(f), r_(r) {
  const int n = r;
  cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) cartan_[i][i] = 2;
  for (int i = 0; i + 1 < n; ++i) cartan_[i][i + 1] = cartan_[i + 1][i] = -1;
  switch (f) {
    case Family::A2t2:
      twice_d_ = {1};
      break;
    case Family::A2t2odd:  // C_r, node r long
      cartan_[n - 2][n - 1] = -2;
      twice_d_.assign(n, 2);
      twice_d_[n - 1] = 4;
      break;
    case Family::A2t2even:  // B_r, node r short with d_r = 1/2
      cartan_[n - 1][n - 2] = -2;
      twice_d_.assign(n, 2);
      twice_d_[n - 1] = 1;
      break;
    case Family::Dt2:  // B_r, nodes 1..r-1 long
      cartan_[n - 1][n - 2] = -2;
      twice_d_.assign(n, 4);
      twice_d_[n - 1] = 2;
      break;
    case Family::E6t2:  // F_4
      cartan_ = {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
      twice_d_ = {2, 2, 4, 4};
      break;
    case Family::D4t3:  // G_2
      cartan_ = {{2, -3}, {-1, 2}};
      twice_d_ = {2, 6};
      break;
  }
}

int AlgebraType::twice_d0() const {
  return (f_ == Family::A2t2 || f_ == Family::A2t2even) ? 4 : 2;
}

int AlgebraType::half_weight_node() const {
  return (f_ == Family::A2t2 || f_ == Family::A2t2even) ? r_ : 0;
}

bool AlgebraType::sigma_fixed(int node) const {
  switch (f_) {
    case Family::A2t2odd:
      return node == r_;
    case Family::A2t2:
    case Family::A2t2even:
      return false;
    case Family::Dt2:
      return node >= 1 && node <= r_ - 1;
    case Family::E6t2:
      return node == 3 || node == 4;
    case Family::D4t3:
      return node == 2;
  }
  return false;
}

int AlgebraType::dim() const {
  switch (f_) {
    case Family::A2t2odd:
      return 2 * r_;
    case Family::A2t2:
      return 3;
    case Family::A2t2even:
      return 2 * r_ + 1;
    case Family::Dt2:
      return 2 * r_ + 2;
    case Family::E6t2:
      return 27;
    case Family::D4t3:
      return 8;
  }
  return 0;
}

long AlgebraType::weyl_dimension(const std::vector<int>& lam) const {
  const int n = r_;
  if (static_cast<int>(lam.size()) != n) throw std::invalid_argument("weight has wrong length");
  // positive roots in simple-root coordinates, closed under simple reflections
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> todo;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    todo.push_back(e);
  }
  while (!todo.empty()) {
    auto b = todo.back();
    todo.pop_back();
    if (!roots.insert(b).second) continue;
    for (int i = 0; i < n; ++i) {
      int pairing = 0;
      for (int j = 0; j < n; ++j) pairing += cartan_[i][j] * b[j];
      auto c = b;
      c[i] -= pairing;
      bool pos = true;
      for (int x : c) pos = pos && x >= 0;
      if (pos && !roots.count(c)) todo.push_back(c);
    }
  }
  mpq_class dim = 1;
  for (const auto& b : roots) {
    long num = 0, den = 0;  // (lambda+rho, alpha) and (rho, alpha), symmetrizer doubled
    for (int j = 0; j < n; ++j) {
      num += static_cast<long>(b[j]) * twice_d_[j] * (lam[j] + 1);
      den += static_cast<long>(b[j]) * twice_d_[j];
    }
    dim *= mpq_class(num, den);
  }
  dim.canonicalize();
  if (dim.get_den() != 1) throw std::logic_error("non-integral Weyl dimension");
  return dim.get_num().get_si();
}

std::string AlgebraType::tag() const {
  switch (f_) {
    case Family::A2t2odd:
      return "A2t2odd";
    case Family::A2t2even:
      return "A2t2even";
    case Family::A2t2:
      return "A2t2";
    case Family::Dt2:
      return "Dt2";
    case Family::E6t2:
      return "E6t2";
    case Family::D4t3:
      return "D4t3";
  }
  return "?";
}

std::string AlgebraType::display() const {
  switch (f_) {
    case Family::A2t2odd:
      return "A" + std::to_string(2 * r_ - 1) + "(2)";
    case Family::A2t2even:
      return "A" + std::to_string(2 * r_) + "(2)";
    case Family::A2t2:
      return "A2(2)";
    case Family::Dt2:
      return "D" + std::to_string(r_ + 1) + "(2)";
    case Family::E6t2:
      return "E6(2)";
    case Family::D4t3:
      return "D4(3)";
  }
  return "?";
}

}  // namespace twq
