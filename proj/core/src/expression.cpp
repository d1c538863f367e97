#include "gmr/expression.hpp"

#include <cctype>

#include "gmr/error.hpp"

namespace gmr {

Sort Sort::of(ValueKind k) {
    switch (k) {
        case ValueKind::Number: return {Number, Node};
        case ValueKind::Point: return {Point, Node};
        case ValueKind::Vector: return {Vector, Node};
        case ValueKind::Color: return {Color, Node};
        case ValueKind::Multiset: return {Multi, Node};
    }
    return {};
}

namespace {

const char* kind_text(Sort::Kind k) {
    switch (k) {
        case Sort::Node: return "node";
        case Sort::Number: return "number";
        case Sort::Point: return "point";
        case Sort::Vector: return "vector";
        case Sort::Color: return "color";
        case Sort::Multi: return "multiset";
    }
    return "?";
}

bool is_value_kind(Sort::Kind k) { return k != Sort::Node && k != Sort::Multi; }

std::optional<Sort> binary_sort(char op, Sort a, Sort b) {
    using K = Sort::Kind;
    auto both = [&](K x, K y) { return a.kind == x && b.kind == y; };
    switch (op) {
        case '+':
            if (both(K::Point, K::Vector) || both(K::Vector, K::Point) || both(K::Point, K::Point)) {
                return Sort{K::Point};
            }
            if (a.kind == b.kind && (a.kind == K::Vector || a.kind == K::Color || a.kind == K::Number)) {
                return a;
            }
            return std::nullopt;
        case '-':
            if (both(K::Point, K::Point)) return Sort{K::Vector};
            if (both(K::Point, K::Vector)) return Sort{K::Point};
            if (a.kind == b.kind && (a.kind == K::Vector || a.kind == K::Color || a.kind == K::Number)) {
                return a;
            }
            return std::nullopt;
        case '*':
            if (a.kind == K::Number && is_value_kind(b.kind)) return b;
            if (b.kind == K::Number && is_value_kind(a.kind)) return a;
            return std::nullopt;
        case '/':
            if (b.kind == K::Number && is_value_kind(a.kind)) return a;
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::string_view text, const GMapSpec& spec, const ParseOptions& options)
        : text_(text), spec_(spec), options_(options) {}

    ExprPtr run() {
        ExprPtr e = sum();
        blank();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) +
                         ": " + msg);
    }
    [[noreturn]] void sort_fail(const std::string& msg) const {
        throw SortError("expression '" + std::string(text_) + "': " + msg);
    }

    void blank() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    bool peek(char c) {
        blank();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        blank();
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected a name");
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    ExprPtr binary(char op, ExprPtr l, ExprPtr r) {
        auto s = binary_sort(op, l->sort, r->sort);
        if (!s) {
            sort_fail(std::string("no operation ") + to_string(l->sort) + " " + op + " " + to_string(r->sort));
        }
        return make(Expr{Expr::Binary, *s, std::string(1, op), 0, {}, {}, {std::move(l), std::move(r)}});
    }

    ExprPtr sum() {
        ExprPtr e = product();
        while (true) {
            if (eat('+')) {
                e = binary('+', e, product());
            } else if (eat('-')) {
                e = binary('-', e, product());
            } else {
                return e;
            }
        }
    }

    ExprPtr product() {
        ExprPtr e = unary();
        while (true) {
            if (eat('*')) {
                e = binary('*', e, unary());
            } else if (eat('/')) {
                e = binary('/', e, unary());
            } else {
                return e;
            }
        }
    }

    ExprPtr unary() {
        blank();
        // a leading minus on a number literal belongs to the literal
        if (peek('-') && pos_ + 1 < text_.size() &&
            !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) && text_[pos_ + 1] != '.') {
            ++pos_;
            ExprPtr inner = unary();
            if (inner->sort.kind != Sort::Number && inner->sort.kind != Sort::Vector) {
                sort_fail("cannot negate a " + to_string(inner->sort));
            }
            return make(Expr{Expr::Negate, inner->sort, "-", 0, {}, {}, {inner}});
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        while (eat('.')) {
            std::string name = ident();
            if (e->sort.kind != Sort::Node) sort_fail("'." + name + "' applied to a " + to_string(e->sort));
            if (auto label = parse_arc_label(name)) {
                if (label->index > spec_.dimension) sort_fail("link " + name + " exceeds the dimension");
                e = make(Expr{Expr::Link, Sort{Sort::Node}, name, label->index, {}, {}, {e}});
            } else if (const EmbeddingOp* op = spec_.find(name)) {
                e = make(Expr{Expr::Access, Sort::of(*sort_kind(op->sort)), name, 0, {}, {}, {e}});
            } else {
                sort_fail("unknown embedding '" + name + "'");
            }
        }
        return e;
    }

    ExprPtr literal_at() {
        std::size_t p = pos_;
        auto v = parse_value_prefix(text_, p);
        if (!v || v->is<Multiset>()) return nullptr;
        pos_ = p;
        return make(Expr{Expr::Literal, Sort::of(v->kind()), {}, 0, {}, *v, {}});
    }

    ExprPtr primary() {
        blank();
        if (pos_ >= text_.size()) fail("unexpected end");
        const char c = text_[pos_];
        if (c == '(') {
            if (auto lit = literal_at()) return lit;
            ++pos_;
            ExprPtr e = sum();
            expect(')');
            return e;
        }
        if (c == '<' || c == '#' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            if (auto lit = literal_at()) return lit;
            fail("bad literal");
        }
        if (text_.substr(pos_, 4) == "rgb(") {
            if (auto lit = literal_at()) return lit;
            fail("bad color literal");
        }
        std::string name = ident();
        if (eat('(')) return call(name);
        if (eat('{')) return collect(name);
        if (options_.variables && !options_.variables->contains(name)) {
            sort_fail("unknown node variable '" + name + "'");
        }
        return make(Expr{Expr::Var, Sort{Sort::Node}, name, 0, {}, {}, {}});
    }

    ExprPtr call(const std::string& name) {
        std::vector<ExprPtr> args;
        if (!eat(')')) {
            do {
                args.push_back(sum());
            } while (eat(','));
            expect(')');
        }
        if (name != "mean") sort_fail("unknown operation '" + name + "'");
        if (args.size() != 1) sort_fail("mean takes one argument");
        const Sort& s = args.front()->sort;
        if (s.kind != Sort::Multi || !is_value_kind(s.element)) {
            sort_fail("mean of a " + to_string(s));
        }
        return make(Expr{Expr::Call, Sort{s.element}, name, 0, {}, {}, std::move(args)});
    }

    ExprPtr collect(const std::string& pi) {
        const EmbeddingOp* op = spec_.find(pi);
        if (!op) sort_fail("unknown embedding '" + pi + "'");
        blank();
        auto o = parse_orbit_type_prefix(text_, pos_);
        if (!o) fail("expected an orbit type such as <a0 a1>");
        if (o->max_label() > spec_.dimension) sort_fail("orbit " + to_string(*o) + " exceeds the dimension");
        expect('(');
        ExprPtr node = sum();
        expect(')');
        expect('}');
        if (node->sort.kind != Sort::Node) sort_fail("collect seed must be a node");
        Sort s{Sort::Multi, Sort::of(*sort_kind(op->sort)).kind};
        return make(Expr{Expr::Collect, s, pi, 0, *o, {}, {node}});
    }

    std::string_view text_;
    const GMapSpec& spec_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
    if (e.kind != Expr::Binary) return 3;
    return (e.name == "+" || e.name == "-") ? 1 : 2;
}

}  // namespace

std::string to_string(const Sort& s) {
    if (s.kind == Sort::Multi) return std::string("multiset of ") + kind_text(s.element);
    return kind_text(s.kind);
}

ExprPtr parse_expression(std::string_view text, const GMapSpec& spec, const ParseOptions& options) {
    return Parser(text, spec, options).run();
}

std::string to_string(const Expr& e) {
    switch (e.kind) {
        case Expr::Var: return e.name;
        case Expr::Link:
        case Expr::Access: {
            const Expr& inner = *e.args.front();
            std::string base = to_string(inner);
            if (inner.kind == Expr::Binary || inner.kind == Expr::Negate) base = "(" + base + ")";
            return base + "." + e.name;
        }
        case Expr::Collect:
            return e.name + "{" + to_string(e.orbit) + "(" + to_string(*e.args.front()) + ")}";
        case Expr::Literal: return to_string(*e.literal);
        case Expr::Negate: {
            const Expr& inner = *e.args.front();
            std::string text = to_string(inner);
            if (inner.kind == Expr::Binary || inner.kind == Expr::Literal) text = "(" + text + ")";
            return "-" + text;
        }
        case Expr::Call: return e.name + "(" + to_string(*e.args.front()) + ")";
        case Expr::Binary: {
            const int p = precedence(e);
            std::string l = to_string(*e.args[0]);
            std::string r = to_string(*e.args[1]);
            if (precedence(*e.args[0]) < p) l = "(" + l + ")";
            if (precedence(*e.args[1]) <= p && e.args[1]->kind == Expr::Binary) r = "(" + r + ")";
            return l + " " + e.name + " " + r;
        }
    }
    return {};
}

std::set<std::string> variables(const Expr& e) {
    std::set<std::string> out;
    if (e.kind == Expr::Var) out.insert(e.name);
    for (const auto& a : e.args) out.merge(variables(*a));
    return out;
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

[[noreturn]] void no_op(char op, const Value& a, const Value& b) {
    throw EvalError(std::string("no operation ") + std::string(kind_name(a.kind())) + " " + op + " " +
                    std::string(kind_name(b.kind())));
}

template <class F>
Value scale(const Value& v, F f) {
    if (v.is<double>()) return f(v.as<double>());
    if (v.is<Point2>()) return Point2{f(v.as<Point2>().x), f(v.as<Point2>().y)};
    if (v.is<Vector2>()) return Vector2{f(v.as<Vector2>().x), f(v.as<Vector2>().y)};
    if (v.is<Color>()) {
        const Color& c = v.as<Color>();
        return Color{f(c.r), f(c.g), f(c.b)};
    }
    throw EvalError("cannot scale a multiset");
}

}  // namespace

Value apply_binary(char op, const Value& a, const Value& b) {
    if (op == '*') {
        if (a.is<double>() && !b.is<Multiset>()) return scale(b, [&](double x) { return a.as<double>() * x; });
        if (b.is<double>() && !a.is<Multiset>()) return scale(a, [&](double x) { return x * b.as<double>(); });
        no_op(op, a, b);
    }
    if (op == '/') {
        if (!b.is<double>() || a.is<Multiset>()) no_op(op, a, b);
        const double d = b.as<double>();
        if (d == 0.0) throw EvalError("division by zero");
        return scale(a, [&](double x) { return x / d; });
    }
    const double s = op == '+' ? 1.0 : op == '-' ? -1.0 : 0.0;
    if (s == 0.0) throw EvalError(std::string("unknown operator '") + op + "'");
    if (a.is<double>() && b.is<double>()) return a.as<double>() + s * b.as<double>();
    if (a.is<Color>() && b.is<Color>()) {
        const Color &x = a.as<Color>(), &y = b.as<Color>();
        return Color{x.r + s * y.r, x.g + s * y.g, x.b + s * y.b};
    }
    if (a.is<Vector2>() && b.is<Vector2>()) {
        const Vector2 &x = a.as<Vector2>(), &y = b.as<Vector2>();
        return Vector2{x.x + s * y.x, x.y + s * y.y};
    }
    if (a.is<Point2>() && b.is<Vector2>()) {
        const Point2& x = a.as<Point2>();
        const Vector2& y = b.as<Vector2>();
        return Point2{x.x + s * y.x, x.y + s * y.y};
    }
    if (a.is<Vector2>() && b.is<Point2>() && op == '+') {
        const Vector2& x = a.as<Vector2>();
        const Point2& y = b.as<Point2>();
        return Point2{x.x + y.x, x.y + y.y};
    }
    if (a.is<Point2>() && b.is<Point2>()) {
        const Point2 &x = a.as<Point2>(), &y = b.as<Point2>();
        if (op == '+') return Point2{x.x + y.x, x.y + y.y};
        return Vector2{x.x - y.x, x.y - y.y};
    }
    no_op(op, a, b);
}

Value mean(const Multiset& values) {
    if (values.empty()) throw EvalError("mean of an empty multiset");
    Value total = values.front();
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k].kind() != total.kind()) throw EvalError("mean over mixed sorts");
        total = apply_binary('+', total, values[k]);
    }
    return apply_binary('/', total, static_cast<double>(values.size()));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

const std::string& as_node(const Evaluated& v) {
    if (!std::holds_alternative<std::string>(v)) throw EvalError("expected a node");
    return std::get<std::string>(v);
}

Value as_value(Evaluated v) {
    if (!std::holds_alternative<Value>(v)) throw EvalError("expected a value, got a node");
    return std::get<Value>(std::move(v));
}

}  // namespace

Evaluated eval(const Expr& e, const Assignment& sigma, const GMap& g) {
    switch (e.kind) {
        case Expr::Var: {
            auto it = sigma.find(e.name);
            if (it == sigma.end()) throw EvalError("unbound variable '" + e.name + "'");
            if (!g.graph.has_node(it->second)) throw EvalError("variable '" + e.name + "' bound to unknown node");
            return it->second;
        }
        case Expr::Link: {
            std::string v = as_node(eval(*e.args.front(), sigma, g));
            try {
                return link(g.graph, v, e.label);
            } catch (const StructureError& err) {
                throw EvalError(err.what());
            }
        }
        case Expr::Access: {
            std::string v = as_node(eval(*e.args.front(), sigma, g));
            auto value = access(g, v, e.name);
            if (!value) throw EvalError("node '" + v + "' has no " + e.name + " label");
            return *value;
        }
        case Expr::Collect: {
            std::string v = as_node(eval(*e.args.front(), sigma, g));
            return Value(collect(g, e.name, e.orbit, v));
        }
        case Expr::Literal: return *e.literal;
        case Expr::Negate: return scale(as_value(eval(*e.args.front(), sigma, g)), [](double x) { return -x; });
        case Expr::Call: {
            Value arg = as_value(eval(*e.args.front(), sigma, g));
            if (!arg.is<Multiset>()) throw EvalError("mean expects a multiset");
            return mean(arg.as<Multiset>());
        }
        case Expr::Binary:
            return apply_binary(e.name.front(), as_value(eval(*e.args[0], sigma, g)),
                                as_value(eval(*e.args[1], sigma, g)));
    }
    throw EvalError("bad expression");
}

Value eval_value(const Expr& e, const Assignment& sigma, const GMap& g) {
    return as_value(eval(e, sigma, g));
}

}  // namespace gmr
