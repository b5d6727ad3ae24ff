#include "twistlift/fixture.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace twistlift {

FixtureError::FixtureError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line) {}

Order QuaternionData::make_order() const { return Order(QuatLattice(algebra, order)); }

Ideal QuaternionData::make_ideal(const std::string& name) const {
  const Order r = make_order();
  if (name == order_name) return Ideal(r, r);
  for (const auto& [n, basis] : ideals)
    if (n == name) return Ideal(QuatLattice(algebra, basis), r);
  throw std::invalid_argument("unknown ideal '" + name + "'");
}

std::vector<TernaryForm> Fixture::forms() const {
  std::vector<TernaryForm> out;
  for (const auto& c : classes) out.push_back(c.form);
  return out;
}

const TwistFamily& Fixture::family(const std::string& name) const {
  std::string known;
  for (const auto& f : families) {
    if (f.name == name) return f;
    known += (known.empty() ? "" : ", ") + f.name;
  }
  throw std::invalid_argument("unknown family '" + name + "' (known: " + known + ")");
}

std::vector<Ideal> class_ideals(const Fixture& fx) {
  if (!fx.quaternion) throw std::invalid_argument("fixture " + fx.curve.label + " has no quaternion data");
  std::vector<Ideal> out;
  for (const auto& c : fx.classes) {
    if (c.source == "-") throw std::invalid_argument("a class of " + fx.curve.label + " has no printed ideal");
    out.push_back(fx.quaternion->make_ideal(c.source));
  }
  return out;
}

std::vector<std::int64_t> unit_weights(const Fixture& fx) {
  std::vector<std::int64_t> out;
  for (const auto& c : fx.classes) {
    if (c.source != "-" && fx.quaternion) {
      out.push_back(unit_half_count(right_order(fx.quaternion->make_ideal(c.source))));
    } else {
      const std::int64_t aut = automorphism_count(c.form);
      if (aut % 4 != 0) throw std::domain_error("automorphism count not divisible by 4");
      out.push_back(aut / 4);
    }
  }
  return out;
}

std::vector<FixtureCheck> verify_fixture(const Fixture& fx) {
  std::vector<FixtureCheck> out;
  for (std::size_t i = 0; i < fx.classes.size(); ++i) {
    const auto& c = fx.classes[i];
    if (c.source == "-" || !fx.quaternion) continue;
    const TernaryForm derived = ternary_form(right_order(fx.quaternion->make_ideal(c.source)));
    out.push_back({"form of class " + std::to_string(i + 1) + " from " + c.source,
                   equivalent(derived, c.form).has_value(), derived.to_string() + " vs " + c.form.to_string()});
  }
  const std::int64_t disc = fx.classes.front().form.discriminant();
  bool same = true;
  for (const auto& c : fx.classes) same = same && c.form.discriminant() == disc;
  out.push_back({"common discriminant", same, "det G = " + std::to_string(disc)});
  const auto w = unit_weights(fx);
  const std::int64_t h = height(fx.eigenvector, w);
  std::string ws;
  for (const auto x : w) ws += (ws.empty() ? "" : " ") + std::to_string(x);
  out.push_back({"height identity", h == fx.height,
                 "weights " + ws + ", sum v^2 w = " + std::to_string(h) + ", fixture " + std::to_string(fx.height)});
  return out;
}

std::map<std::int64_t, std::int64_t> parse_expansion(const std::string& text) {
  static const std::regex term(R"(\s*([+-])?\s*(\d*)\s*q(?:\^(\d+))?\s*)");
  std::map<std::int64_t, std::int64_t> out;
  auto it = text.cbegin();
  std::smatch m;
  while (it != text.cend()) {
    if (!std::regex_search(it, text.cend(), m, term, std::regex_constants::match_continuous) ||
        m[0].length() == 0) {
      throw std::invalid_argument("cannot parse expansion '" + text + "'");
    }
    if (!out.empty() && !m[1].matched) throw std::invalid_argument("missing operator in expansion '" + text + "'");
    std::int64_t c = m[2].length() > 0 ? std::stoll(m[2].str()) : 1;
    if (m[1].matched && m[1].str() == "-") c = -c;
    const std::int64_t n = m[3].matched ? std::stoll(m[3].str()) : 1;
    if (c == 0 || !out.emplace(n, c).second) throw std::invalid_argument("bad or repeated term in '" + text + "'");
    it = m[0].second;
  }
  if (out.empty()) throw std::invalid_argument("empty expansion");
  return out;
}

std::string format_expansion(const std::map<std::int64_t, std::int64_t>& terms) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, coeff] : terms) {
    std::int64_t c = coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    if (c != 1) os << c;
    os << "q";
    if (n != 1) os << "^" << n;
    first = false;
  }
  return os.str();
}

namespace {

struct Entry {
  int line;
  std::string key;
  std::string value;
};

struct Section {
  int line;
  std::string kind;
  std::string name;
  std::vector<Entry> entries;  // key-value lines
  std::vector<std::pair<int, std::string>> rows;  // bare lines
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& message) const { throw FixtureError(source_, line, message); }
  [[noreturn]] void fail(const Section& s, const std::string& message) const {
    throw FixtureError(source_, s.line, "[" + s.kind + (s.name.empty() ? "" : " " + s.name) + "] " + message);
  }

  std::int64_t integer(const Entry& e, const std::string& text) const {
    try {
      std::size_t pos = 0;
      const std::int64_t v = std::stoll(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      fail(e.line, "key '" + e.key + "': expected an integer, got '" + text + "'");
    }
  }

  std::vector<std::int64_t> integers(const Entry& e) const {
    std::vector<std::int64_t> out;
    for (const auto& w : words(e.value)) out.push_back(integer(e, w));
    return out;
  }

  int sign(const Entry& e) const {
    const std::string v = e.value;
    if (v == "+" || v == "+1" || v == "1") return 1;
    if (v == "-" || v == "-1") return -1;
    fail(e.line, "key '" + e.key + "': expected +1 or -1, got '" + v + "'");
  }

  std::vector<Section> split(std::istream& in) const {
    static const std::regex header(R"(\[\s*([A-Za-z_]+)(?:\s+(\S+))?\s*\])");
    std::vector<Section> sections;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string line = trim(raw);
      if (line.empty()) continue;
      std::smatch m;
      if (line.front() == '[') {
        if (!std::regex_match(line, m, header)) fail(lineno, "malformed section header '" + line + "'");
        sections.push_back({lineno, m[1].str(), m[2].matched ? m[2].str() : std::string(), {}, {}});
        continue;
      }
      if (sections.empty()) fail(lineno, "content before the first section header");
      auto& s = sections.back();
      if (const auto eq = line.find('='); eq != std::string::npos) {
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(lineno, "empty key");
        s.entries.push_back({lineno, key, trim(line.substr(eq + 1))});
      } else {
        s.rows.emplace_back(lineno, line);
      }
    }
    if (sections.empty()) fail(lineno, "empty fixture: no sections");
    return sections;
  }

  // Key lookup with duplicate and unknown-key detection.
  std::map<std::string, Entry> keyed(const Section& s, const std::set<std::string>& allowed,
                                     const std::set<std::string>& repeatable = {}) const {
    std::map<std::string, Entry> out;
    for (const auto& e : s.entries) {
      if (!allowed.count(e.key)) fail(e.line, "unknown key '" + e.key + "' in [" + s.kind + "]");
      if (repeatable.count(e.key)) continue;
      if (!out.emplace(e.key, e).second) fail(e.line, "duplicate key '" + e.key + "'");
    }
    return out;
  }

  const Entry& need(const Section& s, const std::map<std::string, Entry>& keys, const std::string& key) const {
    const auto it = keys.find(key);
    if (it == keys.end()) fail(s, "missing key '" + key + "'");
    return it->second;
  }

  void no_rows(const Section& s) const {
    if (!s.rows.empty()) fail(s.rows.front().first, "expected 'key = value', got '" + s.rows.front().second + "'");
  }

  EllipticCurve curve(const Section& s) const {
    no_rows(s);
    const auto keys =
        keyed(s, {"label", "ainvs", "conductor", "atkin_lehner", "root_number", "self_twist"});
    EllipticCurve c;
    c.label = need(s, keys, "label").value;
    const auto& ainvs = need(s, keys, "ainvs");
    const auto a = integers(ainvs);
    if (a.size() != 5) fail(ainvs.line, "ainvs needs five integers");
    std::copy(a.begin(), a.end(), c.a.begin());
    c.conductor = integer(need(s, keys, "conductor"), need(s, keys, "conductor").value);
    const auto& al = need(s, keys, "atkin_lehner");
    for (const auto& w : words(al.value)) {
      const auto colon = w.find(':');
      if (colon == std::string::npos) fail(al.line, "atkin_lehner entries look like 25:-1");
      const std::int64_t q = integer(al, w.substr(0, colon));
      const auto f = q > 1 ? factor(q) : decltype(factor(q)){};
      if (f.size() != 1) fail(al.line, "atkin_lehner: " + std::to_string(q) + " is not a prime power");
      Entry sign_entry{al.line, al.key, w.substr(colon + 1)};
      c.atkin_lehner.push_back({f.front().first, q, sign(sign_entry)});
    }
    c.root_number = sign(need(s, keys, "root_number"));
    if (const auto it = keys.find("self_twist"); it != keys.end()) c.self_twist = integer(it->second, it->second.value);
    try {
      c.validate();
    } catch (const std::exception& e) {
      fail(s, e.what());
    }
    return c;
  }

  std::vector<QuatElement> basis(const Section& s) const {
    if (!s.entries.empty()) fail(s.entries.front().line, "basis sections hold four rationals per line only");
    std::vector<QuatElement> out;
    for (const auto& [line, text] : s.rows) {
      const auto w = words(text);
      if (w.size() != 4) fail(line, "a quaternion needs four rationals");
      QuatElement x;
      for (int i = 0; i < 4; ++i) {
        try {
          x.c[i] = parse_rational(w[i]);
        } catch (const std::exception&) {
          fail(line, "bad rational '" + w[i] + "'");
        }
      }
      out.push_back(x);
    }
    if (out.size() != 4) fail(s, "needs exactly four basis elements, got " + std::to_string(out.size()));
    return out;
  }

  TwistFamily family(const Section& s, std::span<const std::int64_t> primes) const {
    no_rows(s);
    if (s.name.empty()) fail(s, "family needs a name");
    const auto keys = keyed(s, {"sign", "types", "aux", "aux_type", "second_kind", "expansion", "k", "identity"});
    TwistFamily f;
    f.name = s.name;
    f.sign = sign(need(s, keys, "sign"));
    const auto& types = need(s, keys, "types");
    for (const auto& w : words(types.value)) {
      const auto colon = w.find(':');
      try {
        AdmissibleType t;
        t.type = TypePattern::parse(w.substr(0, colon), primes);
        t.star = colon == std::string::npos ? 1 : static_cast<int>(integer(types, w.substr(colon + 1)));
        f.types.push_back(t);
      } catch (const FixtureError&) {
        throw;
      } catch (const std::exception& e) {
        fail(types.line, e.what());
      }
    }
    if (f.types.empty()) fail(types.line, "no admissible types");
    if (const auto it = keys.find("aux"); it != keys.end()) f.aux = integer(it->second, it->second.value);
    if (const auto it = keys.find("aux_type"); it != keys.end()) {
      try {
        f.aux_type = TypePattern::parse(it->second.value, primes);
      } catch (const std::exception& e) {
        fail(it->second.line, e.what());
      }
    }
    if (f.has_first_kind() != f.aux_type.has_value()) fail(s, "aux and aux_type must be given together");
    if (f.has_first_kind() && !is_prime(f.aux)) fail(need(s, keys, "aux").line, "aux must be a prime");
    if (const auto it = keys.find("second_kind"); it != keys.end()) {
      f.second_kind = integers(it->second);
      for (const std::int64_t p : f.second_kind)
        if (std::find(primes.begin(), primes.end(), p) == primes.end())
          fail(it->second.line, "second_kind prime " + std::to_string(p) + " does not divide the level");
    }
    const auto& expansion = need(s, keys, "expansion");
    try {
      f.expansion = parse_expansion(expansion.value);
    } catch (const std::exception& e) {
      fail(expansion.line, e.what());
    }
    f.k_printed = need(s, keys, "k").value;
    if (const auto it = keys.find("identity"); it != keys.end()) f.k_identity = it->second.value;
    return f;
  }

  Fixture build(const std::vector<Section>& sections) const {
    Fixture fx;
    const Section* curve_section = nullptr;
    const Section* classes_section = nullptr;
    const Section* algebra_section = nullptr;
    const Section* order_section = nullptr;
    std::vector<const Section*> ideal_sections, family_sections;
    for (const auto& s : sections) {
      auto once = [&](const Section*& slot) {
        if (slot) fail(s.line, "duplicate [" + s.kind + "] section");
        slot = &s;
      };
      if (s.kind == "curve") once(curve_section);
      else if (s.kind == "classes") once(classes_section);
      else if (s.kind == "algebra") once(algebra_section);
      else if (s.kind == "order") once(order_section);
      else if (s.kind == "ideal") ideal_sections.push_back(&s);
      else if (s.kind == "family") family_sections.push_back(&s);
      else fail(s.line, "unknown section [" + s.kind + "]");
    }
    if (!curve_section) fail(0, "missing [curve] section");
    fx.curve = curve(*curve_section);
    if (!classes_section) fail(0, "missing [classes] section");
    const auto primes = odd_level_primes(fx.curve.conductor);

    if (!order_section && (algebra_section || !ideal_sections.empty())) fail(0, "[ideal] or [algebra] without [order]");
    if (order_section) {
      QuaternionData q;
      if (algebra_section) {
        no_rows(*algebra_section);
        const auto keys = keyed(*algebra_section, {"a", "b"});
        const auto& a = need(*algebra_section, keys, "a");
        const auto& b = need(*algebra_section, keys, "b");
        try {
          q.algebra = QuaternionAlgebra(integer(a, a.value), integer(b, b.value));
        } catch (const FixtureError&) {
          throw;
        } catch (const std::exception& e) {
          fail(*algebra_section, e.what());
        }
      }
      if (order_section->name.empty()) fail(*order_section, "order needs a name");
      q.order_name = order_section->name;
      q.order = basis(*order_section);
      for (const Section* s : ideal_sections) {
        if (s->name.empty()) fail(*s, "ideal needs a name");
        if (s->name == q.order_name) fail(*s, "ideal name clashes with the order");
        for (const auto& [n, b] : q.ideals)
          if (n == s->name) fail(*s, "duplicate ideal name");
        q.ideals.emplace_back(s->name, basis(*s));
      }
      try {
        for (const auto& [n, b] : q.ideals) q.make_ideal(n);
        q.make_order();
      } catch (const std::exception& e) {
        fail(*order_section, std::string("quaternion data: ") + e.what());
      }
      fx.quaternion = std::move(q);
    }

    const Section& cs = *classes_section;
    no_rows(cs);
    const auto keys = keyed(cs, {"eigenvector", "height", "class"}, {"class"});
    fx.eigenvector = integers(need(cs, keys, "eigenvector"));
    fx.height = integer(need(cs, keys, "height"), need(cs, keys, "height").value);
    for (const auto& e : cs.entries) {
      if (e.key != "class") continue;
      const auto w = words(e.value);
      if (w.size() != 7) fail(e.line, "class = SOURCE a b c d e f");
      ClassEntry c;
      c.source = w[0];
      if (c.source != "-") {
        bool known = fx.quaternion && c.source == fx.quaternion->order_name;
        if (fx.quaternion)
          for (const auto& [n, b] : fx.quaternion->ideals) known = known || n == c.source;
        if (!known) fail(e.line, "class source '" + c.source + "' is not a defined order or ideal");
      }
      std::array<std::int64_t, 6> v{};
      for (int i = 0; i < 6; ++i) v[i] = integer(e, w[i + 1]);
      c.form = TernaryForm{v[0], v[1], v[2], v[3], v[4], v[5]};
      if (!c.form.positive_definite()) fail(e.line, "form is not positive definite");
      fx.classes.push_back(c);
    }
    if (fx.classes.empty()) fail(cs, "no class entries");
    if (fx.eigenvector.size() != fx.classes.size()) fail(cs, "eigenvector length differs from the class count");

    for (const Section* s : family_sections) {
      TwistFamily f = family(*s, primes);
      for (const auto& g : fx.families)
        if (g.name == f.name) fail(*s, "duplicate family name");
      fx.families.push_back(std::move(f));
    }
    return fx;
  }

 private:
  std::string source_;
};

}  // namespace

Fixture parse_fixture(std::istream& in, const std::string& source) {
  Parser parser(source);
  return parser.build(parser.split(in));
}

Fixture parse_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError(path, 0, "cannot open file");
  return parse_fixture(in, path);
}

std::string serialize(const Fixture& fx) {
  std::ostringstream os;
  const auto& c = fx.curve;
  os << "[curve]\n";
  os << "label = " << c.label << "\n";
  os << "ainvs =";
  for (const auto a : c.a) os << " " << a;
  os << "\nconductor = " << c.conductor << "\n";
  os << "atkin_lehner =";
  for (const auto& w : c.atkin_lehner) os << " " << w.prime_power << ":" << (w.sign > 0 ? "+1" : "-1");
  os << "\nroot_number = " << (c.root_number > 0 ? "+1" : "-1") << "\n";
  if (c.self_twist) os << "self_twist = " << *c.self_twist << "\n";

  if (fx.quaternion) {
    const auto& q = *fx.quaternion;
    auto rows = [&](const std::vector<QuatElement>& basis) {
      for (const auto& x : basis) {
        for (int i = 0; i < 4; ++i) os << (i ? " " : "") << to_string(x.c[i]);
        os << "\n";
      }
    };
    os << "\n[algebra]\na = " << q.algebra.a << "\nb = " << q.algebra.b << "\n";
    os << "\n[order " << q.order_name << "]\n";
    rows(q.order);
    for (const auto& [name, basis] : q.ideals) {
      os << "\n[ideal " << name << "]\n";
      rows(basis);
    }
  }

  os << "\n[classes]\neigenvector =";
  for (const auto v : fx.eigenvector) os << " " << v;
  os << "\nheight = " << fx.height << "\n";
  for (const auto& cl : fx.classes) {
    const auto& f = cl.form;
    os << "class = " << cl.source << " " << f.a << " " << f.b << " " << f.c << " " << f.d << " " << f.e << " " << f.f
       << "\n";
  }

  for (const auto& f : fx.families) {
    os << "\n[family " << f.name << "]\n";
    os << "sign = " << (f.sign > 0 ? "+1" : "-1") << "\n";
    os << "types =";
    for (const auto& t : f.types) os << " " << t.type.to_string() << ":" << t.star;
    os << "\n";
    if (f.has_first_kind()) {
      os << "aux = " << f.aux << "\n";
      os << "aux_type = " << f.aux_type->to_string() << "\n";
    }
    if (!f.second_kind.empty()) {
      os << "second_kind =";
      for (const auto p : f.second_kind) os << " " << p;
      os << "\n";
    }
    os << "expansion = " << format_expansion(f.expansion) << "\n";
    os << "k = " << f.k_printed << "\n";
    if (f.k_identity) os << "identity = " << *f.k_identity << "\n";
  }
  return os.str();
}

}  // namespace twistlift
