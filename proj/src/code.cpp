#include "ceqc/code.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "ceqc/gf2.hpp"

namespace ceqc {

namespace {

std::vector<std::uint64_t> symplectic_rows(const StabilizerCode& c) {
  std::vector<std::uint64_t> rows;
  rows.reserve(c.generators.size());
  for (const Pauli& g : c.generators) rows.push_back(symplectic_row(g));
  return rows;
}

Pauli from_string(const std::string& s) { return parse_pauli(s); }

}  // namespace

void validate(const StabilizerCode& c) {
  if (c.n < 1 || c.n > 32) throw CodeError("qubit count out of range");
  if (static_cast<int>(c.generators.size()) != c.n - c.k)
    throw CodeError("generator count does not match n-k");
  for (const Pauli& g : c.generators) {
    if (g.n != c.n) throw CodeError("generator length mismatch");
    if (g.phase != 0 && g.phase != 2)
      throw CodeError("generator sign must be +1 or -1");
    if (g.is_identity_body()) throw CodeError("identity listed as generator");
  }
  for (std::size_t i = 0; i < c.generators.size(); ++i)
    for (std::size_t j = i + 1; j < c.generators.size(); ++j)
      if (!commutes(c.generators[i], c.generators[j]))
        throw CodeError("generators " + std::to_string(i) + "," +
                        std::to_string(j) + " anticommute");
  if (gf2::rank(symplectic_rows(c)) != c.n - c.k)
    throw CodeError("generators are dependent over GF(2)");
  if (!c.logical_x.empty() || !c.logical_z.empty()) {
    if (static_cast<int>(c.logical_x.size()) != c.k ||
        static_cast<int>(c.logical_z.size()) != c.k)
      throw CodeError("logical operator count does not match k");
    for (int i = 0; i < c.k; ++i) {
      for (const Pauli& g : c.generators) {
        if (!commutes(c.logical_x[i], g) || !commutes(c.logical_z[i], g))
          throw CodeError("logical operator anticommutes with a generator");
      }
      for (int j = 0; j < c.k; ++j) {
        bool anti = !commutes(c.logical_x[i], c.logical_z[j]);
        if (anti != (i == j))
          throw CodeError("logical pairing is not symplectic");
      }
      if (in_group_body(c, c.logical_x[i]) ||
          in_group_body(c, c.logical_z[i]))
        throw CodeError("logical operator lies in the stabilizer group");
    }
  }
}

std::uint64_t symplectic_row(const Pauli& p) {
  if (p.n > 32) throw CodeError("symplectic row limited to n <= 32");
  return p.x.low64() | (p.z.low64() << p.n);
}

bool in_group_body(const StabilizerCode& c, const Pauli& p) {
  return gf2::in_span(symplectic_row(p), gf2::reduce(symplectic_rows(c)));
}

std::optional<bool> sign_matches_group(const StabilizerCode& c,
                                       const Pauli& p) {
  auto combo = gf2::solve_combination(symplectic_rows(c), symplectic_row(p));
  if (!combo) return std::nullopt;
  Pauli prod = Pauli::identity(c.n);
  for (std::size_t i = 0; i < c.generators.size(); ++i)
    if ((*combo >> i) & 1) prod = multiply(prod, c.generators[i]);
  // Bodies agree by construction; compare the full phase.
  return prod.phase == p.phase;
}

std::vector<int> syndrome_of(const StabilizerCode& c, const Pauli& error) {
  if (error.n != c.n) throw DimensionError("syndrome_of: length mismatch");
  std::vector<int> s;
  s.reserve(c.generators.size());
  for (const Pauli& g : c.generators) s.push_back(commutes(g, error) ? 0 : 1);
  return s;
}

/*
 * Dual-rail substitution on letters: I -> II, X -> XX, Y -> YX, Z -> ZI,
 * with the displayed prefix carried over unchanged. Per qubit this is
 * conjugation by the encoding isometry, so the map is multiplicative with
 * exact phases.
 */
Pauli tau(const Pauli& p) {
  int n_y = (p.x & p.z).popcount();
  int display = (p.phase - n_y) & 3;
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string s = kPrefix[display];
  for (int q = 0; q < p.n; ++q) {
    bool bx = p.x.get(q), bz = p.z.get(q);
    if (bx && bz)
      s += "YX";
    else if (bx)
      s += "XX";
    else if (bz)
      s += "ZI";
    else
      s += "II";
  }
  return parse_pauli(s);
}

ConcatenationResult dual_rail_concatenate(const StabilizerCode& c) {
  validate(c);
  StabilizerCode out;
  out.n = 2 * c.n;
  out.k = c.k;
  for (const Pauli& g : c.generators) out.generators.push_back(tau(g));
  for (int j = 0; j < c.n; ++j) {
    // -Z_{2j+1} Z_{2j+2} in 1-based labels.
    std::string s(out.n, 'I');
    s[2 * j] = 'Z';
    s[2 * j + 1] = 'Z';
    out.generators.push_back(parse_pauli("-" + s));
  }
  for (const Pauli& lx : c.logical_x) out.logical_x.push_back(tau(lx));
  for (const Pauli& lz : c.logical_z) out.logical_z.push_back(tau(lz));
  validate(out);

  ConcatenationResult res;
  res.symplectic_partners.reserve(c.n);
  for (int j = 0; j < c.n; ++j) {
    std::string s(out.n, 'I');
    s[2 * j + 1] = 'X';  // X on the even rail qubit of pair j
    res.symplectic_partners.push_back(parse_pauli(s));
  }

  // Preserve CSS-ness when the input has it.
  bool css_in = true;
  for (const Pauli& g : c.generators)
    if (g.x.any() && g.z.any()) css_in = false;
  if (css_in) {
    res.code = make_css(out);
  } else {
    res.code.code = out;
    res.code.is_css = false;
  }
  return res;
}

CeReport check_ce_necessary(const StabilizerCode& c) {
  CeReport rep;
  Pauli zn = Pauli::identity(c.n);
  for (int q = 0; q < c.n; ++q) zn.z.set(q);
  if (!in_group_body(c, zn)) {
    rep.violations.push_back("Z^n is not in the stabilizer group");
  }
  auto scan = [&](const Pauli& p, const std::string& what) {
    if (p.x.popcount() % 2 != 0)
      rep.violations.push_back(what + " has odd X/Y count: " +
                               format_pauli(p));
  };
  for (std::size_t i = 0; i < c.generators.size(); ++i)
    scan(c.generators[i], "generator " + std::to_string(i + 1));
  for (std::size_t i = 0; i < c.logical_x.size(); ++i)
    scan(c.logical_x[i], "logical X" + std::to_string(i + 1));
  for (std::size_t i = 0; i < c.logical_z.size(); ++i)
    scan(c.logical_z[i], "logical Z" + std::to_string(i + 1));
  rep.passed = rep.violations.empty();
  return rep;
}

CeReport check_ce_full(const CssCode& c) {
  CeReport rep;
  if (!c.is_css) {
    rep.violations.push_back("full CE check requires a CSS code");
    return rep;
  }
  // C1 = span of X-generator supports and logical-X supports; every basis
  // string of every logical coset is shift_y + C1.
  std::vector<std::uint64_t> c1_rows;
  for (int i : c.x_rows) c1_rows.push_back(c.code.generators[i].x.low64());
  for (const Pauli& lx : c.code.logical_x) c1_rows.push_back(lx.x.low64());
  auto basis = gf2::reduce(c1_rows);
  if (basis.size() > 20) {
    throw CodeError("coset enumeration above 2^20 cap");
  }
  int w = -1;
  for (std::uint64_t e : gf2::span_elements(basis)) {
    int wt = gf2::weight(c.shift_y ^ e);
    if (w < 0) w = wt;
    if (wt != w) {
      rep.violations.push_back("codeword weights differ: " +
                               std::to_string(w) + " vs " +
                               std::to_string(wt));
      return rep;
    }
  }
  rep.passed = true;
  rep.weight = w;
  return rep;
}

std::uint64_t distance_search_cost(int n, int max_w) {
  std::uint64_t total = 0;
  for (int w = 1; w <= max_w; ++w) {
    std::uint64_t combos = 1;
    for (int i = 0; i < w; ++i) combos = combos * (n - i) / (i + 1);
    std::uint64_t p3 = 1;
    for (int i = 0; i < w; ++i) p3 *= 3;
    total += combos * p3;
  }
  return total;
}

std::optional<int> distance_brute_force(const StabilizerCode& c, int max_w) {
  auto gen_rows = gf2::reduce(symplectic_rows(c));
  // Enumerate supports of each weight, letters X/Y/Z per support qubit.
  std::vector<int> support;
  std::optional<int> found;
  auto try_letters = [&](auto&& self, std::size_t idx, Pauli p) -> bool {
    if (idx == support.size()) {
      for (const Pauli& g : c.generators)
        if (!commutes(p, g)) return false;
      return !gf2::in_span(symplectic_row(p), gen_rows);
    }
    int q = support[idx];
    for (int letter = 0; letter < 3; ++letter) {
      Pauli t = p;
      if (letter != 1) t.x.set(q);
      if (letter != 0) t.z.set(q);
      if (self(self, idx + 1, t)) return true;
    }
    return false;
  };
  auto scan = [&](auto&& self, int next, int remaining) -> bool {
    if (remaining == 0)
      return try_letters(try_letters, 0, Pauli::identity(c.n));
    for (int q = next; q <= c.n - remaining; ++q) {
      support.push_back(q);
      if (self(self, q + 1, remaining - 1)) {
        support.pop_back();
        return true;
      }
      support.pop_back();
    }
    return false;
  };
  for (int w = 1; w <= max_w; ++w) {
    if (scan(scan, 0, w)) {
      found = w;
      break;
    }
  }
  return found;
}

CssCode make_css(const StabilizerCode& c) {
  validate(c);
  CssCode out;
  out.code = c;
  for (std::size_t i = 0; i < c.generators.size(); ++i) {
    const Pauli& g = c.generators[i];
    bool has_x = g.x.any(), has_z = g.z.any();
    if (has_x && has_z)
      throw CodeError("generator " + std::to_string(i + 1) +
                      " is neither pure X nor pure Z");
    if (has_x) {
      if (g.phase != 0)
        throw CodeError("X-type generator carries a -1 sign");
      out.x_rows.push_back(static_cast<int>(i));
    } else {
      out.z_rows.push_back(static_cast<int>(i));
    }
  }
  for (const Pauli& lx : c.logical_x)
    if (lx.z.any()) throw CodeError("CSS view requires pure-X logical X");
  for (const Pauli& lz : c.logical_z)
    if (lz.x.any()) throw CodeError("CSS view requires pure-Z logical Z");
  // Solve (-1)^(h.y) = sign for every Z row, plus h.y = 0 for the listed
  // logical Z supports so that the shifted basis realizes logical zero.
  std::vector<std::uint64_t> rows;
  std::vector<int> rhs;
  for (int i : out.z_rows) {
    rows.push_back(c.generators[i].z.low64());
    rhs.push_back(c.generators[i].phase == 2 ? 1 : 0);
  }
  for (const Pauli& lz : c.logical_z) {
    rows.push_back(lz.z.low64());
    rhs.push_back(0);
  }
  auto y = gf2::solve_inner_system(rows, rhs);
  if (!y) throw CodeError("no shift vector matches the generator signs");
  out.shift_y = *y;
  out.is_css = true;
  return out;
}

namespace {

// Kernel vectors that stay independent modulo a rowspace.
std::vector<gf2::Row> quotient_basis(const std::vector<gf2::Row>& kernel,
                                     const std::vector<gf2::Row>& rowspace) {
  auto seen = gf2::reduce(rowspace);
  std::vector<gf2::Row> out;
  for (gf2::Row v : kernel) {
    gf2::Row r = v;
    for (gf2::Row b : seen)
      if ((r ^ b) < r) r ^= b;
    if (r) {
      out.push_back(v);
      seen.push_back(r);
      std::sort(seen.begin(), seen.end(), std::greater<>());
    }
  }
  return out;
}

}  // namespace

/*
 * Logical basis derivation. For CSS codes: X-side candidates are the kernel
 * of the Z-support matrix modulo the X-generator rowspace (and vice versa),
 * then the Z side is re-mixed so the anticommutation matrix is exactly the
 * identity. The general path runs symplectic Gram-Schmidt on a kernel basis
 * of the symplectic-product map. Both paths are deterministic.
 */
StabilizerCode derive_logicals(StabilizerCode c) {
  c.logical_x.clear();
  c.logical_z.clear();
  validate(c);

  const int n = c.n;

  bool css = true;
  for (const Pauli& g : c.generators)
    if (g.x.any() && g.z.any()) css = false;
  if (css) {
    std::vector<gf2::Row> xg, zg;
    for (const Pauli& g : c.generators)
      (g.x.any() ? xg : zg).push_back((g.x | g.z).low64());
    auto u = quotient_basis(gf2::nullspace(zg, n), xg);  // X supports
    auto v = quotient_basis(gf2::nullspace(xg, n), zg);  // Z supports
    if (static_cast<int>(u.size()) != c.k ||
        static_cast<int>(v.size()) != c.k)
      throw CodeError("logical space dimension does not match k");
    std::vector<gf2::Row> mrows(c.k, 0);
    for (int i = 0; i < c.k; ++i)
      for (int j = 0; j < c.k; ++j)
        if (gf2::dot(u[i], v[j])) mrows[i] |= gf2::Row{1} << j;
    for (int j = 0; j < c.k; ++j) {
      std::vector<int> rhs(c.k, 0);
      rhs[j] = 1;
      auto sol = gf2::solve_inner_system(mrows, rhs);
      if (!sol) throw CodeError("symplectic pairing failed");
      gf2::Row zj = 0;
      for (int l = 0; l < c.k; ++l)
        if ((*sol >> l) & 1) zj ^= v[l];
      Pauli px = Pauli::identity(n), pz = Pauli::identity(n);
      px.x = BitVec::from_low64(u[j]);
      pz.z = BitVec::from_low64(zj);
      c.logical_x.push_back(px);
      c.logical_z.push_back(pz);
    }
    validate(c);
    return c;
  }
  auto gen_rows = symplectic_rows(c);
  // Symplectic product of rows u, v (each x | z<<n).
  auto sprod = [n](std::uint64_t u, std::uint64_t v) {
    std::uint64_t mask = (n == 64) ? ~0ull : ((1ull << n) - 1);
    std::uint64_t ux = u & mask, uz = u >> n;
    std::uint64_t vx = v & mask, vz = v >> n;
    return gf2::dot(ux, vz) ^ gf2::dot(uz, vx);
  };
  // Normalizer = kernel of v -> (sprod(g_i, v))_i. Build constraint rows in
  // plain inner-product form: sprod(g, v) = (g.z | g.x<<n) . v.
  std::vector<std::uint64_t> constraints;
  for (const Pauli& g : c.generators)
    constraints.push_back(g.z.low64() | (g.x.low64() << n));
  auto normalizer = gf2::nullspace(constraints, 2 * n);

  // Quotient out the stabilizer rowspace, then pair greedily.
  std::vector<std::uint64_t> pool = quotient_basis(normalizer, gen_rows);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::vector<std::uint64_t> rest = pool;
  while (!rest.empty()) {
    std::uint64_t a = rest.front();
    rest.erase(rest.begin());
    auto partner = std::find_if(rest.begin(), rest.end(), [&](auto v) {
      return sprod(a, v) == 1;
    });
    if (partner == rest.end())
      throw CodeError("symplectic pairing failed");  // a central element slip
    std::uint64_t b = *partner;
    rest.erase(partner);
    for (auto& v : rest) {
      if (sprod(v, b)) v ^= a;
      if (sprod(v, a)) v ^= b;
    }
    pairs.emplace_back(a, b);
  }
  if (static_cast<int>(pairs.size()) != c.k)
    throw CodeError("derived logical count does not match k");

  auto to_pauli = [n](std::uint64_t row) {
    std::uint64_t mask = (n == 64) ? ~0ull : ((1ull << n) - 1);
    Pauli p = Pauli::identity(n);
    p.x = BitVec::from_low64(row & mask);
    p.z = BitVec::from_low64(row >> n);
    // Canonical sign +1: phase exponent equals the Y count (letterwise +).
    p.phase = static_cast<std::uint8_t>((p.x & p.z).popcount() & 3);
    return p;
  };
  for (auto& [a, b] : pairs) {
    // Call the lower-X-weight member of the pair the logical X.
    std::uint64_t mask = (n == 64) ? ~0ull : ((1ull << n) - 1);
    bool a_is_x = std::popcount(a >> n) <= std::popcount(b >> n) &&
                  std::popcount(a & mask) >= std::popcount(b & mask);
    std::uint64_t xr = a_is_x ? a : b, zr = a_is_x ? b : a;
    c.logical_x.push_back(to_pauli(xr));
    c.logical_z.push_back(to_pauli(zr));
  }
  validate(c);
  return c;
}

namespace {

StabilizerCode build(int n, int k, const std::vector<std::string>& gens,
                     const std::vector<std::string>& lx,
                     const std::vector<std::string>& lz) {
  StabilizerCode c;
  c.n = n;
  c.k = k;
  for (auto& g : gens) c.generators.push_back(from_string(g));
  for (auto& s : lx) c.logical_x.push_back(from_string(s));
  for (auto& s : lz) c.logical_z.push_back(from_string(s));
  return c;
}

CssCode make_c4() {
  return make_css(build(4, 1, {"XXXX", "-ZZII", "-IIZZ"}, {"XXII"}, {"IZZI"}));
}

CssCode make_c12() {
  std::vector<std::string> gens = {
      "XXXXIIIIIIII",  // g1
      "IIXXXXIIIIII",  // g2
      "IIIIIIXXXXII",  // g3
      "IIIIIIIIXXXX",  // g4
      "ZIZIZIZIZIZI",  // g5
      "-ZZIIIIIIIIII", "-IIZZIIIIIIII", "-IIIIZZIIIIII",
      "-IIIIIIZZIIII", "-IIIIIIIIZZII", "-IIIIIIIIIIZZ"};
  return make_css(build(12, 1, gens, {"IIIIXXIIIIXX"}, {"IIIIIIZIZIIZ"}));
}

CssCode make_c14() {
  std::vector<std::string> gens = {
      "XXIIXXIIXXIIXX",  // g1
      "IIXXXXIIIIXXXX",  // g2
      "IIIIIIXXXXXXXX",  // g3
      "ZIZIZIZIZIZIZI",  // g4
      "-ZZIIIIIIIIIIII", "-IIZZIIIIIIIIII", "-IIIIZZIIIIIIII",
      "-IIIIIIZZIIIIII", "-IIIIIIIIZZIIII", "-IIIIIIIIIIZZII",
      "-IIIIIIIIIIIIZZ"};
  StabilizerCode base = build(14, 3, gens, {}, {});
  return make_css(derive_logicals(base));
}

CssCode make_c10() {
  StabilizerCode five =
      build(5, 1, {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}, {"XXXXX"}, {"ZZZZZ"});
  return dual_rail_concatenate(five).code;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"c4", "c12", "c14", "c10"}; }

CssCode builtin(const std::string& name) {
  if (name == "c4") return make_c4();
  if (name == "c12") return make_c12();
  if (name == "c14") return make_c14();
  if (name == "c10") return make_c10();
  std::string known;
  for (auto& s : builtin_names()) known += (known.empty() ? "" : ", ") + s;
  throw CodeError("unknown code '" + name + "' (known: " + known + ")");
}

std::string serialize_code(const CssCode& c, const std::string& name) {
  std::ostringstream out;
  out << "code " << name << " n=" << c.code.n << " k=" << c.code.k << "\n";
  for (const Pauli& g : c.code.generators) out << format_pauli(g) << "\n";
  out << "logicalX:\n";
  for (const Pauli& p : c.code.logical_x) out << format_pauli(p) << "\n";
  out << "logicalZ:\n";
  for (const Pauli& p : c.code.logical_z) out << format_pauli(p) << "\n";
  return out.str();
}

std::pair<std::string, CssCode> parse_code(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("code ", 0) != 0)
    throw CodeError("code file must start with a 'code' header");
  std::istringstream hdr(line.substr(5));
  std::string name, nf, kf;
  hdr >> name >> nf >> kf;
  if (nf.rfind("n=", 0) != 0 || kf.rfind("k=", 0) != 0)
    throw CodeError("malformed code header: " + line);
  StabilizerCode c;
  c.n = std::stoi(nf.substr(2));
  c.k = std::stoi(kf.substr(2));
  int section = 0;  // 0 = generators, 1 = logicalX, 2 = logicalZ
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "logicalX:") {
      section = 1;
      continue;
    }
    if (line == "logicalZ:") {
      section = 2;
      continue;
    }
    Pauli p = parse_pauli(line);
    if (section == 0)
      c.generators.push_back(p);
    else if (section == 1)
      c.logical_x.push_back(p);
    else
      c.logical_z.push_back(p);
  }
  validate(c);
  bool css = true;
  for (const Pauli& g : c.generators)
    if (g.x.any() && g.z.any()) css = false;
  CssCode out;
  if (css) {
    out = make_css(c);
  } else {
    out.code = c;
    out.is_css = false;
  }
  return {name, out};
}

}  // namespace ceqc
