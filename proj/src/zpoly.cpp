#include "qcolor/zpoly.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace qcolor {

ZPolynomial::ZPolynomial(int num_qubits, double constant)
    : num_qubits_(num_qubits), constant_(constant) {
  if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
}

int ZPolynomial::max_weight() const {
  int w = 0;
  for (const auto& [qubits, coeff] : terms_) {
    w = std::max(w, static_cast<int>(qubits.size()));
  }
  return w;
}

void ZPolynomial::add_term(std::vector<int> qubits, double coeff) {
  if (qubits.empty()) {
    constant_ += coeff;
    return;
  }
  std::sort(qubits.begin(), qubits.end());
  if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
    throw std::invalid_argument("duplicate qubit index in term");
  }
  if (qubits.front() < 0 || qubits.back() >= num_qubits_) {
    throw std::out_of_range("term qubit index out of range");
  }
  auto [it, inserted] = terms_.try_emplace(std::move(qubits), coeff);
  if (!inserted) it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

ZPolynomial& ZPolynomial::operator+=(const ZPolynomial& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("qubit count mismatch in +");
  }
  constant_ += other.constant_;
  for (const auto& [qubits, coeff] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(qubits, coeff);
    if (!inserted) it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
  return *this;
}

ZPolynomial& ZPolynomial::operator*=(double s) {
  constant_ *= s;
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [qubits, coeff] : terms_) coeff *= s;
  return *this;
}

ZPolynomial operator*(const ZPolynomial& a, const ZPolynomial& b) {
  if (a.num_qubits_ != b.num_qubits_) {
    throw std::invalid_argument("qubit count mismatch in *");
  }
  ZPolynomial out(a.num_qubits_, a.constant_ * b.constant_);
  auto multiply_into = [&out](const std::vector<int>& s,
                              const std::vector<int>& t, double coeff) {
    // Z_q^2 = 1: the product's support is the symmetric difference.
    std::vector<int> diff;
    diff.reserve(s.size() + t.size());
    std::set_symmetric_difference(s.begin(), s.end(), t.begin(), t.end(),
                                  std::back_inserter(diff));
    out.add_term(std::move(diff), coeff);
  };
  static const std::vector<int> kEmpty;
  for (const auto& [s, cs] : a.terms_) {
    if (b.constant_ != 0.0) multiply_into(s, kEmpty, cs * b.constant_);
    for (const auto& [t, ct] : b.terms_) multiply_into(s, t, cs * ct);
  }
  if (a.constant_ != 0.0) {
    for (const auto& [t, ct] : b.terms_) multiply_into(kEmpty, t, a.constant_ * ct);
  }
  return out;
}

std::uint64_t ZPolynomial::term_mask(const std::vector<int>& qubits) const {
  std::uint64_t mask = 0;
  for (int q : qubits) mask |= 1ULL << (num_qubits_ - 1 - q);
  return mask;
}

double ZPolynomial::eval_diagonal(std::uint64_t basis_index) const {
  if (num_qubits_ > 0 && (basis_index >> num_qubits_) != 0) {
    throw std::out_of_range("basis index out of range");
  }
  double value = constant_;
  for (const auto& [qubits, coeff] : terms_) {
    const int parity = std::popcount(basis_index & term_mask(qubits)) & 1;
    value += parity ? -coeff : coeff;
  }
  return value;
}

double ZPolynomial::eval_bits(const std::vector<int>& bits) const {
  if (static_cast<int>(bits.size()) != num_qubits_) {
    throw std::invalid_argument("bitstring length mismatch");
  }
  double value = constant_;
  for (const auto& [qubits, coeff] : terms_) {
    int parity = 0;
    for (int q : qubits) parity ^= bits[q] & 1;
    value += parity ? -coeff : coeff;
  }
  return value;
}

std::vector<double> ZPolynomial::full_diagonal() const {
  if (num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("full_diagonal: register too large");
  }
  const std::uint64_t dim = 1ULL << num_qubits_;
  std::vector<double> diag(dim, constant_);
  for (const auto& [qubits, coeff] : terms_) {
    const std::uint64_t mask = term_mask(qubits);
    for (std::uint64_t x = 0; x < dim; ++x) {
      diag[x] += (std::popcount(x & mask) & 1) ? -coeff : coeff;
    }
  }
  return diag;
}

std::string ZPolynomial::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "N " << num_qubits_ << '\n';
  if (constant_ != 0.0 || terms_.empty()) out << constant_ << '\n';
  for (const auto& [qubits, coeff] : terms_) {
    out << coeff;
    for (int q : qubits) out << ' ' << q;
    out << '\n';
  }
  return out.str();
}

ZPolynomial ZPolynomial::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  int n = 0;
  ZPolynomial poly(0);
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      if (!(ls >> tag >> n) || tag != "N") {
        throw std::runtime_error("zpoly text: bad header");
      }
      poly = ZPolynomial(n);
      have_header = true;
      continue;
    }
    double coeff = 0.0;
    if (!(ls >> coeff)) throw std::runtime_error("zpoly text: bad term line");
    std::vector<int> qubits;
    int q = 0;
    while (ls >> q) qubits.push_back(q);
    poly.add_term(std::move(qubits), coeff);
  }
  if (!have_header) throw std::runtime_error("zpoly text: missing header");
  return poly;
}

ZPolynomial z_affine(int num_qubits, int q, double a, double b) {
  ZPolynomial poly(num_qubits, a);
  poly.add_term({q}, b);
  return poly;
}

}  // namespace qcolor
