#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "potts_forge/error.hpp"
#include "potts_forge/milp.hpp"

namespace potts_forge {

namespace {

constexpr const char* kMagic = "potts_forge-milp";

void write_vector(std::ostream& out, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  out << '\n';
}

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  for (const Triplet& t : m.entries) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void expect(const std::string& word) {
    std::string got;
    if (!(in_ >> got) || got != word) fail("expected '" + word + "', got '" + got + "'");
  }
  long integer(const char* what) {
    long v = 0;
    if (!(in_ >> v)) fail(std::string("expected integer ") + what);
    return v;
  }
  double real(const char* what) {
    std::string tok;
    if (!(in_ >> tok)) fail(std::string("expected number ") + what);
    if (tok == "inf") return std::numeric_limits<double>::infinity();
    if (tok == "-inf") return -std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) fail("bad number '" + tok + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + tok + "'");
    }
  }
  [[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, "milp text: " + msg); }

 private:
  std::istream& in_;
};

void read_matrix(Reader& r, SparseMatrix& m, long nnz) {
  m.entries.reserve(static_cast<std::size_t>(nnz));
  for (long k = 0; k < nnz; ++k) {
    const long row = r.integer("row");
    const long col = r.integer("col");
    m.add(static_cast<int>(row), static_cast<int>(col), r.real("value"));
  }
}

}  // namespace

void write_problem(std::ostream& out, const MilpProblem& p) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << kMagic << " 1\n";
  out << "vars " << p.n_vars() << " ineq " << p.n_ineq() << " eq " << p.n_eq() << " nnz " << p.A.entries.size()
      << " nnz_eq " << p.A_eq.entries.size() << " integers " << p.integer_vars.size() << '\n';
  out << "c\n";
  write_vector(out, p.c);
  out << "A\n";
  write_matrix(out, p.A);
  out << "b\n";
  write_vector(out, p.b);
  out << "A_eq\n";
  write_matrix(out, p.A_eq);
  out << "b_eq\n";
  write_vector(out, p.b_eq);
  out << "bounds\n";
  for (std::size_t j = 0; j < p.lb.size(); ++j) out << p.lb[j] << ' ' << p.ub[j] << '\n';
  out << "integers\n";
  for (std::size_t k = 0; k < p.integer_vars.size(); ++k) out << (k ? " " : "") << p.integer_vars[k];
  out << '\n';
  out.flags(flags);
  out.precision(prec);
}

MilpProblem read_problem(std::istream& in) {
  Reader r(in);
  r.expect(kMagic);
  if (r.integer("version") != 1) r.fail("unsupported version");
  r.expect("vars");
  const long n = r.integer("vars");
  r.expect("ineq");
  const long m = r.integer("ineq");
  r.expect("eq");
  const long me = r.integer("eq");
  r.expect("nnz");
  const long nnz = r.integer("nnz");
  r.expect("nnz_eq");
  const long nnz_eq = r.integer("nnz_eq");
  r.expect("integers");
  const long n_int = r.integer("integers");
  if (n < 0 || m < 0 || me < 0 || nnz < 0 || nnz_eq < 0 || n_int < 0) r.fail("negative dimension");

  MilpProblem p;
  p.A = SparseMatrix(static_cast<int>(m), static_cast<int>(n));
  p.A_eq = SparseMatrix(static_cast<int>(me), static_cast<int>(n));
  r.expect("c");
  for (long j = 0; j < n; ++j) p.c.push_back(r.real("c"));
  r.expect("A");
  read_matrix(r, p.A, nnz);
  r.expect("b");
  for (long i = 0; i < m; ++i) p.b.push_back(r.real("b"));
  r.expect("A_eq");
  read_matrix(r, p.A_eq, nnz_eq);
  r.expect("b_eq");
  for (long i = 0; i < me; ++i) p.b_eq.push_back(r.real("b_eq"));
  r.expect("bounds");
  for (long j = 0; j < n; ++j) {
    p.lb.push_back(r.real("lb"));
    p.ub.push_back(r.real("ub"));
  }
  r.expect("integers");
  for (long k = 0; k < n_int; ++k) p.integer_vars.push_back(static_cast<int>(r.integer("integer index")));
  try {
    p.validate();
  } catch (const Error& e) {
    r.fail(e.what());
  }
  return p;
}

}  // namespace potts_forge
