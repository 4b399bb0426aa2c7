#include "a1/arith.hpp"

#include <algorithm>
#include <map>

#include "a1/error.hpp"

namespace a1 {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotAnExtension: return "NotAnExtension";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::CoefficientNotInField: return "CoefficientNotInField";
    case ErrorCode::NonSquareSystem: return "NonSquareSystem";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NonUnitLeadingTerm: return "NonUnitLeadingTerm";
    case ErrorCode::NotAZero: return "NotAZero";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::JacobianVanishesInAlgebra: return "JacobianVanishesInAlgebra";
    case ErrorCode::DegenerateZero: return "DegenerateZero";
    case ErrorCode::InseparableResidueField: return "InseparableResidueField";
    case ErrorCode::CharDividesDimension: return "CharDividesDimension";
    case ErrorCode::DegenerateEkl: return "DegenerateEkl";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::DegreeOrder: return "DegreeOrder";
    case ErrorCode::IrregularValue: return "IrregularValue";
    case ErrorCode::FiberEscapesBound: return "FiberEscapesBound";
    case ErrorCode::SmoothPoint: return "SmoothPoint";
    case ErrorCode::NotANode: return "NotANode";
    case ErrorCode::LeadingCoeffNotSquare: return "LeadingCoeffNotSquare";
    case ErrorCode::SeedInconsistent: return "SeedInconsistent";
    case ErrorCode::NoQuadraticConvergence: return "NoQuadraticConvergence";
    case ErrorCode::NonUnitHessian: return "NonUnitHessian";
    case ErrorCode::BranchDoesNotSpecialize: return "BranchDoesNotSpecialize";
    case ErrorCode::IncompleteBranchSet: return "IncompleteBranchSet";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Usage: return "Usage";
  }
  return "Error";
}

namespace arith {

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const mpz_class& v) {
      mpz_class out = v * v + c;
      return mpz_class(out % n);
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          mpz_class d = x - y;
          q = (q * abs(d)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class d = x - ys;
        d = abs(d);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n_in) {
  if (n_in == 0) throw Error(ErrorCode::ZeroInput, "cannot factor 0");
  mpz_class n = abs(n_in);
  std::map<mpz_class, int> acc;
  for (unsigned long p = 2; p < 1000 && n > 1; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      acc[mpz_class(p)] += 1;
      n /= p;
    }
  }
  factor_into(n, acc);
  return {acc.begin(), acc.end()};
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "squarefree part of 0");
  mpz_class out = 1;
  for (const auto& [p, e] : factor(n))
    if (e % 2 == 1) out *= p;
  return sgn(n) < 0 ? mpz_class(-out) : out;
}

std::vector<mpz_class> prime_divisors(const mpz_class& n) {
  std::vector<mpz_class> out;
  for (const auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

int legendre(const mpz_class& a, const mpz_class& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

namespace {

// Split a = p^v * u with u prime to p.
int split_valuation(mpz_class& u, const mpz_class& p) {
  int v = 0;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  return v;
}

int mod8(const mpz_class& u) {
  mpz_class r = u % 8;
  if (r < 0) r += 8;
  return static_cast<int>(r.get_si());
}

}  // namespace

int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p) {
  if (a == 0 || b == 0) throw Error(ErrorCode::ZeroInput, "Hilbert symbol of 0");
  mpz_class u = a, w = b;
  int alpha = split_valuation(u, p);
  int beta = split_valuation(w, p);
  if (p == 2) {
    auto eps = [](const mpz_class& x) { return ((mod8(x) - 1) / 2) % 2; };
    auto omega = [](const mpz_class& x) {
      int r = mod8(x);
      return ((r * r - 1) / 8) % 2;
    };
    int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  int sign = 1;
  mpz_class eps_p = (p - 1) / 2;
  if ((alpha * beta) % 2 == 1 && eps_p % 2 == 1) sign = -sign;
  if (beta % 2 == 1) sign *= legendre(u, p);
  if (alpha % 2 == 1) sign *= legendre(w, p);
  return sign;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  mpq_class out(rn, rd);
  out.canonicalize();
  return out;
}

}  // namespace arith
}  // namespace a1
