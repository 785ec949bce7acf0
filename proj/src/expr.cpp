#include "lightcone/expr.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace lightcone {

namespace {

struct Node {
  Op op;
  std::int32_t a = -1;
  std::int32_t b = -1;
  std::int32_t aux = 0;   // coordinate index (Coord) or exponent (Pow)
  double value = 0.0;     // Const payload
};

struct NodeKey {
  Op op;
  std::int32_t a, b, aux;
  std::uint64_t vbits;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(k.op));
    mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.a)));
    mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.b)));
    mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.aux)));
    mix(k.vbits);
    return static_cast<std::size_t>(h);
  }
};

class Pool {
 public:
  static Pool& instance() {
    static Pool p;
    return p;
  }

  std::int32_t intern(const Node& n) {
    NodeKey key{n.op, n.a, n.b, n.aux, std::bit_cast<std::uint64_t>(n.value)};
    auto it = intern_.find(key);
    if (it != intern_.end()) return it->second;
    auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(n);
    intern_.emplace(key, id);
    return id;
  }

  const Node& at(std::int32_t id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }

  std::unordered_map<std::uint64_t, std::int32_t>& diff_memo() { return diff_memo_; }

 private:
  Pool() {
    // ids 0 and 1 are pinned to the constants 0 and 1
    nodes_.push_back(Node{Op::Const, -1, -1, 0, 0.0});
    intern_.emplace(NodeKey{Op::Const, -1, -1, 0, std::bit_cast<std::uint64_t>(0.0)}, 0);
    nodes_.push_back(Node{Op::Const, -1, -1, 0, 1.0});
    intern_.emplace(NodeKey{Op::Const, -1, -1, 0, std::bit_cast<std::uint64_t>(1.0)}, 1);
  }

  std::deque<Node> nodes_;
  std::unordered_map<NodeKey, std::int32_t, NodeKeyHash> intern_;
  std::unordered_map<std::uint64_t, std::int32_t> diff_memo_;
};

constexpr std::int32_t kZero = 0;
constexpr std::int32_t kOne = 1;

bool is_const(std::int32_t id, double* out = nullptr) {
  const Node& n = Pool::instance().at(id);
  if (n.op != Op::Const) return false;
  if (out) *out = n.value;
  return true;
}

std::int32_t mk_const(double v) {
  if (v == 0.0) return kZero;  // normalizes -0.0 as well
  return Pool::instance().intern(Node{Op::Const, -1, -1, 0, v});
}

std::int32_t mk(Op op, std::int32_t a, std::int32_t b = -1, std::int32_t aux = 0) {
  return Pool::instance().intern(Node{op, a, b, aux, 0.0});
}

std::int32_t mk_add(std::int32_t a, std::int32_t b);
std::int32_t mk_mul(std::int32_t a, std::int32_t b);

std::int32_t mk_add(std::int32_t a, std::int32_t b) {
  double ca, cb;
  bool ka = is_const(a, &ca), kb = is_const(b, &cb);
  if (ka && kb) return mk_const(ca + cb);
  if (ka && ca == 0.0) return b;
  if (kb && cb == 0.0) return a;
  // fold constants through nested sums: c1 + (c2 + x) -> (c1+c2) + x
  if (ka) {
    const Node& nb = Pool::instance().at(b);
    double c2;
    if (nb.op == Op::Add && is_const(nb.a, &c2)) return mk_add(mk_const(ca + c2), nb.b);
  }
  if (kb) return mk_add(b, a);
  if (a > b) std::swap(a, b);  // commutative: canonical child order
  return mk(Op::Add, a, b);
}

std::int32_t mk_sub(std::int32_t a, std::int32_t b) {
  double ca, cb;
  bool ka = is_const(a, &ca), kb = is_const(b, &cb);
  if (ka && kb) return mk_const(ca - cb);
  if (kb && cb == 0.0) return a;
  if (a == b) return kZero;
  return mk(Op::Sub, a, b);
}

std::int32_t mk_mul(std::int32_t a, std::int32_t b) {
  double ca, cb;
  bool ka = is_const(a, &ca), kb = is_const(b, &cb);
  if (ka && kb) return mk_const(ca * cb);
  if (ka && ca == 0.0) return kZero;
  if (kb && cb == 0.0) return kZero;
  if (ka && ca == 1.0) return b;
  if (kb && cb == 1.0) return a;
  if (ka) {
    const Node& nb = Pool::instance().at(b);
    double c2;
    if (nb.op == Op::Mul && is_const(nb.a, &c2)) return mk_mul(mk_const(ca * c2), nb.b);
  }
  if (kb) return mk_mul(b, a);
  if (a > b) std::swap(a, b);
  return mk(Op::Mul, a, b);
}

std::int32_t mk_div(std::int32_t a, std::int32_t b) {
  double ca, cb;
  bool ka = is_const(a, &ca), kb = is_const(b, &cb);
  if (kb && cb != 0.0) {
    if (ka) return mk_const(ca / cb);
    if (cb == 1.0) return a;
  }
  if (ka && ca == 0.0) return kZero;
  if (a == b) return kOne;  // admissibility of a/a where a = 0 is caught at eval
  return mk(Op::Div, a, b);
}

std::int32_t mk_pow(std::int32_t a, int e) {
  double ca;
  if (e == 0) return kOne;
  if (e == 1) return a;
  if (is_const(a, &ca)) return mk_const(std::pow(ca, e));
  return mk(Op::Pow, a, -1, e);
}

std::int32_t mk_unary(Op op, std::int32_t a) {
  double ca;
  if (is_const(a, &ca)) {
    switch (op) {
      case Op::Exp: return mk_const(std::exp(ca));
      case Op::Log:
        if (ca > 0.0) return mk_const(std::log(ca));
        break;
      case Op::Sin: return mk_const(std::sin(ca));
      case Op::Cos: return mk_const(std::cos(ca));
      case Op::Sqrt:
        if (ca >= 0.0) return mk_const(std::sqrt(ca));
        break;
      default: break;
    }
  }
  return mk(op, a);
}

std::int32_t diff_id(std::int32_t id, int coord) {
  auto& memo = Pool::instance().diff_memo();
  std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)) << 16) |
                      static_cast<std::uint32_t>(coord);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const Node n = Pool::instance().at(id);
  std::int32_t r = kZero;
  switch (n.op) {
    case Op::Const: r = kZero; break;
    case Op::Coord: r = (n.aux == coord) ? kOne : kZero; break;
    case Op::Add: r = mk_add(diff_id(n.a, coord), diff_id(n.b, coord)); break;
    case Op::Sub: r = mk_sub(diff_id(n.a, coord), diff_id(n.b, coord)); break;
    case Op::Mul:
      r = mk_add(mk_mul(diff_id(n.a, coord), n.b), mk_mul(n.a, diff_id(n.b, coord)));
      break;
    case Op::Div: {
      // (a/b)' = a'/b - a b'/b^2
      std::int32_t da = diff_id(n.a, coord), db = diff_id(n.b, coord);
      r = mk_sub(mk_div(da, n.b), mk_div(mk_mul(n.a, db), mk_pow(n.b, 2)));
      break;
    }
    case Op::Pow:
      r = mk_mul(mk_mul(mk_const(n.aux), mk_pow(n.a, n.aux - 1)), diff_id(n.a, coord));
      break;
    case Op::Exp: r = mk_mul(mk_unary(Op::Exp, n.a), diff_id(n.a, coord)); break;
    case Op::Log: r = mk_div(diff_id(n.a, coord), n.a); break;
    case Op::Sin: r = mk_mul(mk_unary(Op::Cos, n.a), diff_id(n.a, coord)); break;
    case Op::Cos:
      r = mk_mul(mk_const(-1.0), mk_mul(mk_unary(Op::Sin, n.a), diff_id(n.a, coord)));
      break;
    case Op::Sqrt:
      r = mk_div(diff_id(n.a, coord), mk_mul(mk_const(2.0), mk_unary(Op::Sqrt, n.a)));
      break;
  }
  memo.emplace(key, r);
  return r;
}

// Per-point value cache tagged by evaluation epoch; every Evaluator owns one
// epoch, so interleaved evaluators at different points never trust each
// other's entries and the workspace is reused without clearing.
struct EvalWorkspace {
  std::vector<double> value;
  std::vector<std::uint64_t> epoch;
  std::uint64_t next_epoch = 0;
};

EvalWorkspace& workspace() {
  static thread_local EvalWorkspace ws;
  return ws;
}

double eval_id(std::int32_t root, std::span<const double> point, std::uint64_t my_epoch) {
  EvalWorkspace& ws = workspace();
  Pool& pool = Pool::instance();
  if (ws.value.size() < pool.size()) {
    ws.value.resize(pool.size());
    ws.epoch.resize(pool.size(), 0);
  }
  auto known = [&](std::int32_t id) { return ws.epoch[static_cast<std::size_t>(id)] == my_epoch; };
  auto store = [&](std::int32_t id, double v) {
    ws.value[static_cast<std::size_t>(id)] = v;
    ws.epoch[static_cast<std::size_t>(id)] = my_epoch;
  };

  std::vector<std::int32_t> stack{root};
  while (!stack.empty()) {
    std::int32_t id = stack.back();
    if (known(id)) {
      stack.pop_back();
      continue;
    }
    const Node& n = pool.at(id);
    switch (n.op) {
      case Op::Const: store(id, n.value); stack.pop_back(); break;
      case Op::Coord:
        if (n.aux >= static_cast<std::int32_t>(point.size()))
          throw EvalDomainError("point has too few coordinates");
        store(id, point[static_cast<std::size_t>(n.aux)]);
        stack.pop_back();
        break;
      default: {
        bool ready = true;
        if (!known(n.a)) { stack.push_back(n.a); ready = false; }
        if (n.b >= 0 && !known(n.b)) { stack.push_back(n.b); ready = false; }
        if (!ready) break;
        double va = ws.value[static_cast<std::size_t>(n.a)];
        double vb = n.b >= 0 ? ws.value[static_cast<std::size_t>(n.b)] : 0.0;
        double out = 0.0;
        switch (n.op) {
          case Op::Add: out = va + vb; break;
          case Op::Sub: out = va - vb; break;
          case Op::Mul: out = va * vb; break;
          case Op::Div:
            if (vb == 0.0) throw EvalDomainError("division by zero");
            out = va / vb;
            break;
          case Op::Pow:
            if (va == 0.0 && n.aux < 0) throw EvalDomainError("zero base with negative exponent");
            out = std::pow(va, n.aux);
            break;
          case Op::Exp: out = std::exp(va); break;
          case Op::Log:
            if (va <= 0.0) throw EvalDomainError("log of non-positive value");
            out = std::log(va);
            break;
          case Op::Sin: out = std::sin(va); break;
          case Op::Cos: out = std::cos(va); break;
          case Op::Sqrt:
            if (va < 0.0) throw EvalDomainError("sqrt of negative value");
            out = std::sqrt(va);
            break;
          default: break;
        }
        store(id, out);
        stack.pop_back();
      }
    }
  }
  return ws.value[static_cast<std::size_t>(root)];
}

int arity_id(std::int32_t root) {
  // iterative with a visited set; the expression is a DAG, not a tree
  std::vector<std::int32_t> stack{root};
  std::unordered_map<std::int32_t, bool> seen;
  int r = 0;
  while (!stack.empty()) {
    std::int32_t id = stack.back();
    stack.pop_back();
    if (seen.count(id)) continue;
    seen.emplace(id, true);
    const Node& n = Pool::instance().at(id);
    switch (n.op) {
      case Op::Const: break;
      case Op::Coord: r = std::max(r, n.aux + 1); break;
      default:
        stack.push_back(n.a);
        if (n.b >= 0) stack.push_back(n.b);
    }
  }
  return r;
}

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Pow: return 3;
    default: return 4;
  }
}

void print_id(std::int32_t id, const std::vector<std::string>& names, std::string& out,
              int parent_prec) {
  const Node& n = Pool::instance().at(id);
  switch (n.op) {
    case Op::Const: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", n.value);
      if (n.value < 0 && parent_prec > 1) {
        out += '(';
        out += buf;
        out += ')';
      } else {
        out += buf;
      }
      return;
    }
    case Op::Coord:
      out += (n.aux < static_cast<std::int32_t>(names.size()))
                 ? names[static_cast<std::size_t>(n.aux)]
                 : ("#" + std::to_string(n.aux));
      return;
    case Op::Exp:
    case Op::Log:
    case Op::Sin:
    case Op::Cos:
    case Op::Sqrt: {
      const char* f = n.op == Op::Exp   ? "exp"
                      : n.op == Op::Log ? "log"
                      : n.op == Op::Sin ? "sin"
                      : n.op == Op::Cos ? "cos"
                                        : "sqrt";
      out += f;
      out += '(';
      print_id(n.a, names, out, 0);
      out += ')';
      return;
    }
    case Op::Pow: {
      bool paren = parent_prec >= 3;
      if (paren) out += '(';
      print_id(n.a, names, out, 3);
      out += '^';
      if (n.aux < 0) {
        out += '(' + std::to_string(n.aux) + ')';
      } else {
        out += std::to_string(n.aux);
      }
      if (paren) out += ')';
      return;
    }
    default: {
      int prec = precedence(n.op);
      bool paren = prec < parent_prec;
      if (paren) out += '(';
      print_id(n.a, names, out, prec);
      switch (n.op) {
        case Op::Add: out += " + "; break;
        case Op::Sub: out += " - "; break;
        case Op::Mul: out += "*"; break;
        case Op::Div: out += "/"; break;
        default: break;
      }
      // right operand of - and / needs strict parenthesization
      print_id(n.b, names, out, (n.op == Op::Sub || n.op == Op::Div) ? prec + 1 : prec);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

Expr Expr::constant(double v) { return from_id(mk_const(v)); }
Expr Expr::coord(int index) { return from_id(mk(Op::Coord, -1, -1, index)); }
Expr Expr::pi() { return constant(3.14159265358979323846); }
Expr Expr::pow(int e) const { return from_id(mk_pow(id_, e)); }

Expr operator+(Expr a, Expr b) { return Expr::from_id(mk_add(a.id_, b.id_)); }
Expr operator-(Expr a, Expr b) { return Expr::from_id(mk_sub(a.id_, b.id_)); }
Expr operator*(Expr a, Expr b) { return Expr::from_id(mk_mul(a.id_, b.id_)); }
Expr operator/(Expr a, Expr b) { return Expr::from_id(mk_div(a.id_, b.id_)); }
Expr operator-(Expr a) { return Expr::from_id(mk_mul(mk_const(-1.0), a.id_)); }

Expr exp(Expr a) { return Expr::from_id(mk_unary(Op::Exp, a.id())); }
Expr log(Expr a) { return Expr::from_id(mk_unary(Op::Log, a.id())); }
Expr sin(Expr a) { return Expr::from_id(mk_unary(Op::Sin, a.id())); }
Expr cos(Expr a) { return Expr::from_id(mk_unary(Op::Cos, a.id())); }
Expr sqrt(Expr a) { return Expr::from_id(mk_unary(Op::Sqrt, a.id())); }

Expr Expr::diff(int coord) const { return from_id(diff_id(id_, coord)); }

double Expr::eval(std::span<const double> point) const {
  return eval_id(id_, point, ++workspace().next_epoch);
}

int Expr::arity() const { return arity_id(id_); }

std::string Expr::str(const std::vector<std::string>& names) const {
  std::string out;
  print_id(id_, names, out, 0);
  return out;
}

Evaluator::Evaluator(std::span<const double> point)
    : point_(point.begin(), point.end()), epoch_(++workspace().next_epoch) {}

double Evaluator::operator()(Expr e) {
  // values cached by earlier calls of this evaluator are reused; entries
  // from other evaluators carry a different epoch and are ignored
  return eval_id(e.id(), point_, epoch_);
}

double fd_crosscheck(Expr e, int coord, std::span<const double> point, double step) {
  double sym = e.diff(coord).eval(point);
  std::vector<double> p(point.begin(), point.end());
  if (coord >= static_cast<int>(p.size())) throw EvalDomainError("coordinate outside point");
  p[static_cast<std::size_t>(coord)] += step;
  double fp = e.eval(p);
  p[static_cast<std::size_t>(coord)] -= 2 * step;
  double fm = e.eval(p);
  double fd = (fp - fm) / (2 * step);
  double res = std::abs(sym - fd);
  if (std::abs(sym) > 1.0) res /= std::abs(sym);
  return res;
}

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& names;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  }

  Expr parse() {
    Expr e = sum();
    skip();
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    return e;
  }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (eat('+')) e = e + product();
      else if (eat('-')) e = e - product();
      else return e;
    }
  }

  Expr product() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) e = e * unary();
      else if (eat('/')) e = e / unary();
      else return e;
    }
  }

  Expr unary() {
    if (eat('-')) return Expr::constant(-1.0) * unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (eat('^')) return base.pow(integer());
    return base;
  }

  int integer() {
    skip();
    bool paren = eat('(');
    skip();
    bool neg = eat('-');
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected integer exponent", pos);
    int v = std::stoi(text.substr(start, pos - start));
    if (paren && !eat(')')) throw ParseError("expected ')'", pos);
    return neg ? -v : v;
  }

  Expr atom() {
    skip();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Expr e = sum();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  Expr number() {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
            text[pos] == 'e' || text[pos] == 'E' ||
            ((text[pos] == '+' || text[pos] == '-') && pos > start &&
             (text[pos - 1] == 'e' || text[pos - 1] == 'E'))))
      ++pos;
    try {
      return Expr::constant(std::stod(text.substr(start, pos - start)));
    } catch (const std::exception&) {
      throw ParseError("malformed number", start);
    }
  }

  Expr identifier() {
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_'))
      ++pos;
    std::string name = text.substr(start, pos - start);
    if (name == "pi") return Expr::pi();
    if (name == "exp" || name == "log" || name == "sin" || name == "cos" || name == "sqrt") {
      if (!eat('(')) throw ParseError("expected '(' after " + name, pos);
      Expr arg = sum();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      if (name == "exp") return exp(arg);
      if (name == "log") return log(arg);
      if (name == "sin") return sin(arg);
      if (name == "cos") return cos(arg);
      return sqrt(arg);
    }
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return Expr::coord(static_cast<int>(i));
    throw ParseError("unknown identifier '" + name + "'", start);
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& names) {
  Parser p{text, names};
  return p.parse();
}

namespace pool {
std::size_t size() { return Pool::instance().size(); }
Op op_of(std::int32_t id) { return Pool::instance().at(id).op; }
}  // namespace pool

}  // namespace lightcone
