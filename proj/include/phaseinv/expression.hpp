// Expression trees over named observables q_{r1..rm} and generator symbols
// (c1.., p): the emitted "formula in terms of magnitudes".  Nodes are
// immutable and shared, so large formulas are DAGs; serialization keeps the
// sharing via a defs table.
#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "phaseinv/rational.hpp"

namespace phaseinv {

struct UndefinedSymbol : std::invalid_argument {
    explicit UndefinedSymbol(const std::string& name)
        : std::invalid_argument("undefined symbol '" + name + "'") {}
};
struct DenominatorVanishes : std::domain_error {
    DenominatorVanishes() : std::domain_error("denominator evaluates to exactly zero") {}
};

// Index vector of an observable q_{r_1,...,r_m}.  q_{-r} and q_{r} denote
// the same polynomial; the canonical form negates so that the first nonzero
// entry is positive.
struct ObservableIndex {
    std::vector<long> r;

    static ObservableIndex canonical(std::vector<long> raw) {
        for (long v : raw) {
            if (v > 0) break;
            if (v < 0) {
                for (auto& x : raw) x = -x;
                break;
            }
        }
        return ObservableIndex{std::move(raw)};
    }

    friend bool operator==(const ObservableIndex&, const ObservableIndex&) = default;
    friend bool operator<(const ObservableIndex& a, const ObservableIndex& b) {
        return a.r < b.r;
    }

    std::string str() const {
        std::string out = "q[";
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(r[i]);
        }
        return out + "]";
    }
};

enum class ExprOp { Constant, Observable, Generator, Add, Mul, Div, Neg, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprOp op;
    Rational value;           // Constant
    ObservableIndex index;    // Observable
    std::string generator;    // Generator
    std::vector<ExprPtr> args;
    int exponent = 0;         // Pow
};

// Total assignment of values to symbols for exact evaluation.
struct SymbolAssignment {
    std::map<ObservableIndex, Rational> observables;
    std::map<std::string, Rational> generators;
};

class ObservableExpression {
public:
    ObservableExpression() : root_(make(ExprNode{ExprOp::Constant, Rational(0)})) {}
    explicit ObservableExpression(ExprPtr root) : root_(std::move(root)) {}

    static ObservableExpression constant(const Rational& c) {
        return ObservableExpression(make(ExprNode{ExprOp::Constant, c}));
    }
    static ObservableExpression observable(std::vector<long> index) {
        ExprNode n{ExprOp::Observable};
        n.index = ObservableIndex::canonical(std::move(index));
        return ObservableExpression(make(std::move(n)));
    }
    static ObservableExpression generator(std::string name) {
        ExprNode n{ExprOp::Generator};
        n.generator = std::move(name);
        return ObservableExpression(make(std::move(n)));
    }
    static ObservableExpression add(std::vector<ObservableExpression> args) {
        return nary(ExprOp::Add, std::move(args));
    }
    static ObservableExpression mul(std::vector<ObservableExpression> args) {
        return nary(ExprOp::Mul, std::move(args));
    }
    static ObservableExpression div(const ObservableExpression& num,
                                    const ObservableExpression& den) {
        ExprNode n{ExprOp::Div};
        n.args = {num.root_, den.root_};
        return ObservableExpression(make(std::move(n)));
    }
    static ObservableExpression neg(const ObservableExpression& a) {
        ExprNode n{ExprOp::Neg};
        n.args = {a.root_};
        return ObservableExpression(make(std::move(n)));
    }
    static ObservableExpression pow(const ObservableExpression& base, int e) {
        ExprNode n{ExprOp::Pow};
        n.args = {base.root_};
        n.exponent = e;
        return ObservableExpression(make(std::move(n)));
    }

    friend ObservableExpression operator+(const ObservableExpression& a,
                                          const ObservableExpression& b) {
        return add({a, b});
    }
    friend ObservableExpression operator-(const ObservableExpression& a,
                                          const ObservableExpression& b) {
        return add({a, neg(b)});
    }
    friend ObservableExpression operator*(const ObservableExpression& a,
                                          const ObservableExpression& b) {
        return mul({a, b});
    }

    const ExprPtr& root() const { return root_; }

    Rational evaluate(const SymbolAssignment& assignment) const {
        std::unordered_map<const ExprNode*, Rational> memo;
        return eval_node(root_.get(), assignment, memo);
    }

    nlohmann::json to_json() const;
    static ObservableExpression from_json(const nlohmann::json& j);

    std::string str() const {
        std::ostringstream out;
        print(root_.get(), out, 0);
        return out.str();
    }

private:
    static ExprPtr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

    static ObservableExpression nary(ExprOp op, std::vector<ObservableExpression> args) {
        ExprNode n{op};
        for (auto& a : args) n.args.push_back(a.root_);
        return ObservableExpression(make(std::move(n)));
    }

    static Rational eval_node(const ExprNode* n, const SymbolAssignment& assignment,
                              std::unordered_map<const ExprNode*, Rational>& memo) {
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        Rational out;
        switch (n->op) {
            case ExprOp::Constant:
                out = n->value;
                break;
            case ExprOp::Observable: {
                auto it = assignment.observables.find(n->index);
                if (it == assignment.observables.end()) throw UndefinedSymbol(n->index.str());
                out = it->second;
                break;
            }
            case ExprOp::Generator: {
                auto it = assignment.generators.find(n->generator);
                if (it == assignment.generators.end()) throw UndefinedSymbol(n->generator);
                out = it->second;
                break;
            }
            case ExprOp::Add:
                for (const auto& a : n->args) out += eval_node(a.get(), assignment, memo);
                break;
            case ExprOp::Mul:
                out = Rational(1);
                for (const auto& a : n->args) out *= eval_node(a.get(), assignment, memo);
                break;
            case ExprOp::Div: {
                Rational den = eval_node(n->args[1].get(), assignment, memo);
                if (den.is_zero()) throw DenominatorVanishes();
                out = eval_node(n->args[0].get(), assignment, memo) / den;
                break;
            }
            case ExprOp::Neg:
                out = -eval_node(n->args[0].get(), assignment, memo);
                break;
            case ExprOp::Pow: {
                Rational base = eval_node(n->args[0].get(), assignment, memo);
                if (n->exponent < 0 && base.is_zero()) throw DenominatorVanishes();
                out = base.pow(n->exponent);
                break;
            }
        }
        memo.emplace(n, out);
        return out;
    }

    static void print(const ExprNode* n, std::ostringstream& out, int parent_prec);

    ExprPtr root_;
};

inline void ObservableExpression::print(const ExprNode* n, std::ostringstream& out,
                                        int parent_prec) {
    // Precedence: add 1, mul/div 2, neg/pow 3.
    auto parens = [&](int prec, auto&& body) {
        if (prec < parent_prec) out << "(";
        body();
        if (prec < parent_prec) out << ")";
    };
    switch (n->op) {
        case ExprOp::Constant:
            out << n->value.str();
            break;
        case ExprOp::Observable:
            out << n->index.str();
            break;
        case ExprOp::Generator:
            out << n->generator;
            break;
        case ExprOp::Add:
            parens(1, [&] {
                for (std::size_t i = 0; i < n->args.size(); ++i) {
                    if (i && n->args[i]->op != ExprOp::Neg) out << " + ";
                    if (i && n->args[i]->op == ExprOp::Neg) {
                        out << " - ";
                        print(n->args[i]->args[0].get(), out, 2);
                        continue;
                    }
                    print(n->args[i].get(), out, 1);
                }
            });
            break;
        case ExprOp::Mul:
            parens(2, [&] {
                for (std::size_t i = 0; i < n->args.size(); ++i) {
                    if (i) out << "*";
                    print(n->args[i].get(), out, 2);
                }
            });
            break;
        case ExprOp::Div:
            parens(2, [&] {
                print(n->args[0].get(), out, 3);
                out << " / ";
                print(n->args[1].get(), out, 3);
            });
            break;
        case ExprOp::Neg:
            parens(3, [&] {
                out << "-";
                print(n->args[0].get(), out, 3);
            });
            break;
        case ExprOp::Pow:
            parens(3, [&] {
                print(n->args[0].get(), out, 4);
                out << "^" << n->exponent;
            });
            break;
    }
}

namespace detail {

inline const char* expr_op_name(ExprOp op) {
    switch (op) {
        case ExprOp::Constant: return "const";
        case ExprOp::Observable: return "q";
        case ExprOp::Generator: return "gen";
        case ExprOp::Add: return "add";
        case ExprOp::Mul: return "mul";
        case ExprOp::Div: return "div";
        case ExprOp::Neg: return "neg";
        case ExprOp::Pow: return "pow";
    }
    return "?";
}

struct ExprSerializer {
    // Nodes referenced more than once are pulled into a defs table and
    // referenced as {"ref": id}; keeps big shared formulas compact.
    std::unordered_map<const ExprNode*, int> refcount;
    std::unordered_map<const ExprNode*, int> def_ids;
    nlohmann::json defs = nlohmann::json::array();

    void count(const ExprNode* n) {
        if (++refcount[n] > 1) return;
        for (const auto& a : n->args) count(a.get());
    }

    nlohmann::json emit(const ExprNode* n) {
        if (auto it = def_ids.find(n); it != def_ids.end())
            return nlohmann::json{{"ref", it->second}};
        nlohmann::json j = body(n);
        if (refcount[n] > 1 && !n->args.empty()) {
            int id = static_cast<int>(defs.size());
            defs.push_back(std::move(j));
            def_ids.emplace(n, id);
            return nlohmann::json{{"ref", id}};
        }
        return j;
    }

    nlohmann::json body(const ExprNode* n) {
        nlohmann::json j;
        j["op"] = expr_op_name(n->op);
        switch (n->op) {
            case ExprOp::Constant:
                j["value"] = n->value.str();
                break;
            case ExprOp::Observable:
                j["index"] = n->index.r;
                break;
            case ExprOp::Generator:
                j["name"] = n->generator;
                break;
            case ExprOp::Pow:
                j["exp"] = n->exponent;
                [[fallthrough]];
            default: {
                nlohmann::json args = nlohmann::json::array();
                for (const auto& a : n->args) args.push_back(emit(a.get()));
                j["args"] = std::move(args);
            }
        }
        return j;
    }
};

}  // namespace detail

inline nlohmann::json ObservableExpression::to_json() const {
    detail::ExprSerializer ser;
    ser.count(root_.get());
    nlohmann::json root = ser.emit(root_.get());
    nlohmann::json j;
    j["schema"] = "observable-expression/1";
    if (!ser.defs.empty()) j["defs"] = std::move(ser.defs);
    j["root"] = std::move(root);
    return j;
}

inline ObservableExpression ObservableExpression::from_json(const nlohmann::json& j) {
    std::vector<ExprPtr> defs;
    auto parse_node = [&](auto&& self, const nlohmann::json& node) -> ExprPtr {
        if (node.contains("ref")) return defs.at(node["ref"].get<int>());
        const std::string op = node["op"].get<std::string>();
        ExprNode n{};
        if (op == "const") {
            n.op = ExprOp::Constant;
            n.value = Rational::parse(node["value"].get<std::string>());
        } else if (op == "q") {
            n.op = ExprOp::Observable;
            n.index = ObservableIndex::canonical(node["index"].get<std::vector<long>>());
        } else if (op == "gen") {
            n.op = ExprOp::Generator;
            n.generator = node["name"].get<std::string>();
        } else {
            if (op == "add") n.op = ExprOp::Add;
            else if (op == "mul") n.op = ExprOp::Mul;
            else if (op == "div") n.op = ExprOp::Div;
            else if (op == "neg") n.op = ExprOp::Neg;
            else if (op == "pow") n.op = ExprOp::Pow;
            else throw std::invalid_argument("unknown expression op '" + op + "'");
            if (n.op == ExprOp::Pow) n.exponent = node["exp"].get<int>();
            for (const auto& a : node["args"]) n.args.push_back(self(self, a));
        }
        return std::make_shared<const ExprNode>(std::move(n));
    };
    if (j.contains("defs"))
        for (const auto& d : j["defs"]) defs.push_back(parse_node(parse_node, d));
    return ObservableExpression(parse_node(parse_node, j["root"]));
}

}  // namespace phaseinv
