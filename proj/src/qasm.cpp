#include "qmux/qasm.hpp"

#include "qmux/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace qmux {

namespace {

enum class Tok { Id, Number, String, Punct, Arrow, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.type = Tok::End;
            return t;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.type = Tok::Id;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                t.text += advance();
            }
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            t.type = Tok::Number;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == 'e' || text_[pos_] == 'E' ||
                    ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > 0 &&
                     (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
                t.text += advance();
            }
            try {
                t.value = std::stod(t.text);
            } catch (...) {
                throw QasmError("malformed number '" + t.text + "'", t.line, t.col);
            }
            return t;
        }
        if (c == '"') {
            t.type = Tok::String;
            advance();
            while (pos_ < text_.size() && text_[pos_] != '"') {
                t.text += advance();
            }
            if (pos_ >= text_.size()) {
                throw QasmError("unterminated string", t.line, t.col);
            }
            advance();
            return t;
        }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            t.type = Tok::Arrow;
            t.text = "->";
            advance();
            advance();
            return t;
        }
        t.type = Tok::Punct;
        t.text = advance();
        return t;
    }

private:
    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Register {
    int offset = 0;
    int size = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { consume(); }

    Circuit parse() {
        expect_id("OPENQASM");
        const Token ver = expect(Tok::Number);
        if (ver.text != "2.0") {
            throw QasmError("unsupported OpenQASM version '" + ver.text + "'", ver.line, ver.col);
        }
        expect_punct(";");
        std::vector<Statement> body;
        while (cur_.type != Tok::End) {
            parse_statement(body);
        }
        Circuit circuit(total_qubits_);
        for (auto& s : body) {
            circuit.add(std::move(s.kind), std::move(s.qubits));
        }
        circuit.validate();
        return circuit;
    }

private:
    struct Statement {
        GateKind kind;
        std::vector<int> qubits;
    };

    void parse_statement(std::vector<Statement>& body) {
        const Token t = expect(Tok::Id);
        if (t.text == "include") {
            const Token file = expect(Tok::String);
            if (file.text != "qelib1.inc") {
                throw QasmError("unsupported include '" + file.text + "'", file.line, file.col);
            }
            expect_punct(";");
            return;
        }
        if (t.text == "qreg" || t.text == "creg") {
            const Token name = expect(Tok::Id);
            expect_punct("[");
            const Token size = expect(Tok::Number);
            expect_punct("]");
            expect_punct(";");
            const int sz = static_cast<int>(size.value);
            if (sz < 1 || size.value != sz) {
                throw QasmError("register size must be a positive integer", size.line, size.col);
            }
            auto& table = (t.text == "qreg") ? qregs_ : cregs_;
            if (table.count(name.text) || (t.text == "qreg" ? cregs_ : qregs_).count(name.text)) {
                throw QasmError("register '" + name.text + "' already declared", name.line, name.col);
            }
            int& total = (t.text == "qreg") ? total_qubits_ : total_clbits_;
            table[name.text] = {total, sz};
            total += sz;
            return;
        }
        if (t.text == "opaque") {
            const Token name = expect(Tok::Id);
            if (name.text != "sw" && name.text != "sdel") {
                throw QasmError("unsupported opaque gate '" + name.text + "'", name.line, name.col);
            }
            while (cur_.type != Tok::End && !(cur_.type == Tok::Punct && cur_.text == ";")) {
                consume();
            }
            expect_punct(";");
            return;
        }
        if (t.text == "measure") {
            const auto targets = parse_arg(qregs_, "qubit");
            expect(Tok::Arrow);
            const auto clbits = parse_arg(cregs_, "classical bit");
            expect_punct(";");
            if (targets.size() != clbits.size()) {
                throw QasmError("measure operand sizes differ", t.line, t.col);
            }
            for (int q : targets) {
                body.push_back({gates::measure(), {q}});
            }
            return;
        }
        if (t.text == "barrier") {
            std::vector<int> qs = parse_arg(qregs_, "qubit");
            while (cur_.type == Tok::Punct && cur_.text == ",") {
                consume();
                const auto more = parse_arg(qregs_, "qubit");
                qs.insert(qs.end(), more.begin(), more.end());
            }
            expect_punct(";");
            body.push_back({gates::barrier(static_cast<int>(qs.size())), std::move(qs)});
            return;
        }
        parse_gate(t, body);
    }

    void parse_gate(const Token& name, std::vector<Statement>& body) {
        std::vector<double> params;
        if (cur_.type == Tok::Punct && cur_.text == "(") {
            consume();
            params.push_back(parse_angle());
            while (cur_.type == Tok::Punct && cur_.text == ",") {
                consume();
                params.push_back(parse_angle());
            }
            expect_punct(")");
        }
        std::vector<std::vector<int>> args;
        args.push_back(parse_arg(qregs_, "qubit"));
        while (cur_.type == Tok::Punct && cur_.text == ",") {
            consume();
            args.push_back(parse_arg(qregs_, "qubit"));
        }
        expect_punct(";");

        const std::optional<GateKind> kind = lookup_gate(name.text, params);
        if (!kind) {
            throw QasmError("unsupported gate '" + name.text + "'", name.line, name.col);
        }
        if (static_cast<int>(args.size()) != kind->arity) {
            throw QasmError("gate '" + name.text + "' expects " + std::to_string(kind->arity) +
                                " operands, got " + std::to_string(args.size()),
                            name.line, name.col);
        }
        if (kind->arity == 1) {
            // Whole-register operands broadcast.
            for (int q : args[0]) {
                body.push_back({*kind, {q}});
            }
        } else {
            if (args[0].size() != 1 || args[1].size() != 1) {
                throw QasmError("two-qubit gate '" + name.text + "' requires indexed operands", name.line,
                                name.col);
            }
            body.push_back({*kind, {args[0][0], args[1][0]}});
        }
    }

    static std::optional<GateKind> lookup_gate(const std::string& name, const std::vector<double>& params) {
        auto need = [&](std::size_t n) {
            if (params.size() != n) {
                throw QasmError("gate '" + name + "' expects " + std::to_string(n) + " parameter(s)", 0, 0);
            }
        };
        if (name == "h") {
            need(0);
            return gates::h();
        }
        if (name == "x") {
            need(0);
            return gates::x();
        }
        if (name == "sx") {
            need(0);
            return gates::sx();
        }
        if (name == "rx") {
            need(1);
            return gates::rx(params[0]);
        }
        if (name == "ry") {
            need(1);
            return gates::ry(params[0]);
        }
        if (name == "rz") {
            need(1);
            return gates::rz(params[0]);
        }
        if (name == "cx") {
            need(0);
            return gates::cx();
        }
        if (name == "cz") {
            need(0);
            return gates::cz();
        }
        if (name == "swap") {
            need(0);
            return gates::swap();
        }
        if (name == "iswap") {
            need(0);
            return gates::iswap();
        }
        if (name == "ecr") {
            need(0);
            return gates::ecr();
        }
        if (name == "sw") {
            need(0);
            return gates::sw();
        }
        if (name == "sdel") {
            need(0);
            return gates::sdel();
        }
        return std::nullopt;
    }

    /// angle := ['-'] term {('*'|'/') term},  term := number | 'pi'
    double parse_angle() {
        double sign = 1.0;
        if (cur_.type == Tok::Punct && cur_.text == "-") {
            consume();
            sign = -1.0;
        }
        double v = parse_angle_term();
        while (cur_.type == Tok::Punct && (cur_.text == "*" || cur_.text == "/")) {
            const std::string op = cur_.text;
            consume();
            const double rhs = parse_angle_term();
            if (op == "*") {
                v *= rhs;
            } else {
                if (rhs == 0.0) {
                    throw QasmError("division by zero in angle", cur_.line, cur_.col);
                }
                v /= rhs;
            }
        }
        return sign * v;
    }

    double parse_angle_term() {
        if (cur_.type == Tok::Number) {
            const double v = cur_.value;
            consume();
            return v;
        }
        if (cur_.type == Tok::Id && cur_.text == "pi") {
            consume();
            return std::numbers::pi;
        }
        throw QasmError("expected number or 'pi' in angle expression, got '" + cur_.text + "'", cur_.line,
                        cur_.col);
    }

    std::vector<int> parse_arg(const std::map<std::string, Register>& table, const std::string& what) {
        const Token name = expect(Tok::Id);
        const auto it = table.find(name.text);
        if (it == table.end()) {
            throw QasmError("undeclared " + what + " register '" + name.text + "'", name.line, name.col);
        }
        if (cur_.type == Tok::Punct && cur_.text == "[") {
            consume();
            const Token idx = expect(Tok::Number);
            expect_punct("]");
            const int i = static_cast<int>(idx.value);
            if (i < 0 || i >= it->second.size || idx.value != i) {
                throw QasmError("index " + idx.text + " out of range for register '" + name.text + "' of size " +
                                    std::to_string(it->second.size),
                                idx.line, idx.col);
            }
            return {it->second.offset + i};
        }
        std::vector<int> all(it->second.size);
        for (int i = 0; i < it->second.size; ++i) {
            all[i] = it->second.offset + i;
        }
        return all;
    }

    Token expect(Tok type) {
        if (cur_.type != type) {
            throw QasmError("unexpected token '" + cur_.text + "'", cur_.line, cur_.col);
        }
        Token t = cur_;
        consume();
        return t;
    }

    void expect_id(const std::string& text) {
        if (cur_.type != Tok::Id || cur_.text != text) {
            throw QasmError("expected '" + text + "', got '" + cur_.text + "'", cur_.line, cur_.col);
        }
        consume();
    }

    void expect_punct(const std::string& text) {
        if (cur_.type != Tok::Punct || cur_.text != text) {
            throw QasmError("expected '" + text + "', got '" + cur_.text + "'", cur_.line, cur_.col);
        }
        consume();
    }

    void consume() { cur_ = lexer_.next(); }

    Lexer lexer_;
    Token cur_;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    int total_qubits_ = 0;
    int total_clbits_ = 0;
};

std::string format_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

} // namespace

Circuit parse_qasm(const std::string& text) { return Parser(text).parse(); }

std::string emit_qasm(const Circuit& circuit) {
    bool has_sw = false;
    bool has_sdel = false;
    bool has_measure = false;
    for (const auto& g : circuit.gates()) {
        has_sw |= g.kind.cls == GateClass::SwitchMarker;
        has_sdel |= g.kind.cls == GateClass::SwitchDelay;
        has_measure |= g.kind.name == "MEASURE";
    }

    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    if (has_sw || has_sdel) {
        out << "// pragma mux gates\n";
        if (has_sw) {
            out << "opaque sw a,b;\n";
        }
        if (has_sdel) {
            out << "opaque sdel a;\n";
        }
    }
    if (circuit.num_qubits() > 0) {
        out << "qreg q[" << circuit.num_qubits() << "];\n";
    }
    if (has_measure) {
        out << "creg c[" << circuit.num_qubits() << "];\n";
    }
    for (const auto& g : circuit.gates()) {
        if (g.kind.name == "MEASURE") {
            out << "measure q[" << g.qubits[0] << "] -> c[" << g.qubits[0] << "];\n";
            continue;
        }
        if (g.kind.name == "BARRIER") {
            out << "barrier";
            for (std::size_t i = 0; i < g.qubits.size(); ++i) {
                out << (i == 0 ? " " : ", ") << "q[" << g.qubits[i] << "]";
            }
            out << ";\n";
            continue;
        }
        out << lower(g.kind.name);
        if (!g.kind.params.empty()) {
            out << "(";
            for (std::size_t i = 0; i < g.kind.params.size(); ++i) {
                out << (i == 0 ? "" : ",") << format_angle(g.kind.params[i]);
            }
            out << ")";
        }
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            out << (i == 0 ? " " : ",") << "q[" << g.qubits[i] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

} // namespace qmux
