#include "schumacher/compiler.hpp"

#include "schumacher/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace schumacher {

namespace {

struct Blocking {
    int m = 0;    // block size
    int nb = 0;   // number of blocks
    int last = 0; // size of the top block
};

int ceil_sqrt(int w)
{
    int m = 0;
    while (m * m < w)
        ++m;
    return m;
}

Blocking blocking(int w)
{
    Blocking b;
    b.m = ceil_sqrt(w);
    b.nb = (w + b.m - 1) / b.m;
    b.last = w - (b.nb - 1) * b.m;
    return b;
}

int ceil_log2(int n)
{
    int b = 0;
    while ((1LL << b) < n)
        ++b;
    return b;
}

const char* reg_label(Reg r)
{
    switch (r) {
    case Reg::X: return "X";
    case Reg::Y: return "Y";
    case Reg::S: return "S";
    }
    return "?";
}

Bits bits_of(const Register& r) { return {r.lo, static_cast<int>(r.size())}; }

// Value range representable in a register view.
struct Range {
    long double lo, hi;
};

Range range_of(int width, bool is_signed)
{
    if (width == 0)
        return {0, 0};
    long double span = 1;
    for (int i = 0; i < width; ++i)
        span *= 2;
    if (is_signed)
        return {-span / 2, span / 2 - 1};
    return {0, span - 1};
}

const Register& reg_for(const Machine& m, Reg r)
{
    auto it = m.regs.find(r);
    if (it == m.regs.end())
        throw std::invalid_argument(std::string("statement uses register ") + reg_label(r) +
                                    " which the machine lacks");
    return it->second;
}

const Condition* find_guard(const Statement& s, Condition::Kind k)
{
    for (const Condition& c : s.guards)
        if (c.kind == k)
            return &c;
    return nullptr;
}

void add_banks(Machine& m, Qubit& next, int c_size, int d_size)
{
    m.ws.c_lo = next;
    m.ws.c_size = c_size;
    m.circuit.layout.regs.push_back({"C", next, next + static_cast<Qubit>(c_size), false, true, true});
    next += static_cast<Qubit>(c_size);
    m.ws.d_lo = next;
    m.ws.d_size = d_size;
    if (d_size > 0) {
        m.circuit.layout.regs.push_back({"D", next, next + static_cast<Qubit>(d_size), false, true, true});
        next += static_cast<Qubit>(d_size);
    }
}

void add_flags(Machine& m, Qubit& next)
{
    m.circuit.layout.regs.push_back({"F", next, next + 2, false, true, true});
    m.flag0 = next;
    m.flag1 = next + 1;
    next += 2;
}

std::pair<int, int> max_demand(Mode mode, int max_width)
{
    std::pair<int, int> need{0, 0};
    for (int w = 1; w <= max_width; ++w) {
        auto d = bank_demand(mode, w);
        need.first = std::max(need.first, d.first);
        need.second = std::max(need.second, d.second);
    }
    return need;
}

} // namespace

std::string_view mode_name(Mode m) { return m == Mode::Standard ? "standard" : "space_efficient"; }

std::string_view phase_name(PhaseMode p) { return p == PhaseMode::Plain ? "plain" : "modified"; }

Mode parse_mode(std::string_view s)
{
    if (s == "standard")
        return Mode::Standard;
    if (s == "space_efficient" || s == "space-efficient")
        return Mode::SpaceEfficient;
    throw std::invalid_argument("unknown mode: " + std::string(s));
}

PhaseMode parse_phase(std::string_view s)
{
    if (s == "plain")
        return PhaseMode::Plain;
    if (s == "modified")
        return PhaseMode::Modified;
    throw std::invalid_argument("unknown phase setting: " + std::string(s));
}

std::string_view statement_kind_name(StatementKind k)
{
    switch (k) {
    case StatementKind::UnconditionalAdd: return "unconditional_add";
    case StatementKind::BitConditionalAdd: return "bit_conditional_add";
    case StatementKind::InequalityConditionalAdd: return "inequality_conditional_add";
    case StatementKind::EqualityBitConditionalAdd: return "equality_bit_conditional_add";
    case StatementKind::EqualityInequalityFlip: return "equality_inequality_flip";
    }
    return "?";
}

StatementKind classify(const Statement& s)
{
    using K = Condition::Kind;
    const bool is_add = s.action.kind == Action::Kind::Add;
    const auto& g = s.guards;
    if (g.empty() && is_add)
        return StatementKind::UnconditionalAdd;
    if (g.size() == 1 && is_add) {
        if (g[0].kind == K::BitSet || g[0].kind == K::NonNegative)
            return StatementKind::BitConditionalAdd;
        if (g[0].kind == K::AtMost || g[0].kind == K::AtLeast)
            return StatementKind::InequalityConditionalAdd;
    }
    if (g.size() == 2 && find_guard(s, K::Equals)) {
        if (is_add && find_guard(s, K::BitSet))
            return StatementKind::EqualityBitConditionalAdd;
        if (!is_add && find_guard(s, K::TruncAtLeast))
            return StatementKind::EqualityInequalityFlip;
    }
    throw std::invalid_argument("statement " + s.id + " has no gate-level shape: " + s.describe());
}

BitConstant BitConstant::from_int(std::int64_t v, int width)
{
    BitConstant k;
    k.bits.resize(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i)
        k.bits[static_cast<std::size_t>(i)] = i < 64 ? ((static_cast<std::uint64_t>(v) >> i) & 1u) != 0 : v < 0;
    return k;
}

BitConstant BitConstant::all_ones(int width)
{
    BitConstant k;
    k.bits.assign(static_cast<std::size_t>(width), true);
    return k;
}

std::pair<int, int> bank_demand(Mode mode, int w)
{
    if (w <= 0)
        return {0, 0};
    if (mode == Mode::Standard)
        return {w, 0};
    Blocking b = blocking(w);
    return {b.nb, b.m + 1};
}

int s_register_width(int n) { return ceil_log2(n) + 1; }

// ---------------------------------------------------------------- Emitter

Emitter::Emitter(Circuit& out, Workspace ws, Mode mode, PhaseMode phase)
    : out_(out), ws_(ws), mode_(mode), phase_(phase)
{
}

Qubit Emitter::C(int i) const
{
    if (i < 0 || i >= ws_.c_size)
        throw std::logic_error("carry workspace too small");
    return ws_.c_lo + static_cast<Qubit>(i);
}

Qubit Emitter::D(int j) const
{
    if (j < 0 || j >= ws_.d_size)
        throw std::logic_error("chain workspace too small");
    return ws_.d_lo + static_cast<Qubit>(j);
}

Circuit Emitter::capture(const std::function<void(Emitter&)>& body) const
{
    Circuit frag;
    frag.qubit_count = out_.qubit_count;
    Emitter sub(frag, ws_, mode_, phase_);
    body(sub);
    return frag;
}

void Emitter::and_gate(Qubit a, bool neg_a, Qubit b, bool neg_b, Qubit t, Site site)
{
    if (neg_b && !neg_a) {
        std::swap(a, b);
        std::swap(neg_a, neg_b);
    }
    const Polarity pol = !neg_a ? Polarity::PP : (neg_b ? Polarity::NN : Polarity::NP);
    if (phase_ == PhaseMode::Modified && site != Site::Plain)
        out_.add(Gate::phase_toffoli(a, b, t, site == Site::Compute ? Direction::Fwd : Direction::Rev, pol));
    else
        out_.add(Gate::toffoli(a, b, t, pol));
}

void Emitter::flag_and(Qubit a, Qubit b, Qubit t, bool compute)
{
    and_gate(a, false, b, false, t, compute ? Site::Compute : Site::Uncompute);
}

void Emitter::maj(bool l, Qubit x, Qubit c, Qubit t, Site site)
{
    if (!l) {
        and_gate(x, false, c, false, t, site);
        return;
    }
    if (phase_ == PhaseMode::Modified && site != Site::Plain)
        out_.add(Gate::phase_or(x, c, t, site == Site::Compute ? Direction::Fwd : Direction::Rev));
    else
        out_.add(Gate::or_toffoli(x, c, t));
}

void Emitter::literal_copy(Qubit x, bool k, Qubit t)
{
    out_.add(k ? Gate::xor_gate(x, t) : Gate::xor_neg(x, t));
}

void Emitter::add_bit(bool k, Qubit x, std::optional<Qubit> b)
{
    if (!k)
        return;
    out_.add(b ? Gate::xor_gate(*b, x) : Gate::not_gate(x));
}

void Emitter::add_carry(Qubit carry, Qubit x, std::optional<Qubit> b)
{
    out_.add(b ? Gate::toffoli(carry, *b, x) : Gate::xor_gate(carry, x));
}

void Emitter::conditional_add(const BitConstant& k, Bits x, std::optional<Qubit> b)
{
    if (k.width() != x.width)
        throw std::invalid_argument("conditional_add: constant width differs from register width");
    if (x.width == 0)
        return;
    out_.begin_span("conditional_add");
    if (mode_ == Mode::Standard)
        add_standard(k, x, b);
    else
        add_blocked(k, x, b);
    out_.end_span("conditional_add");
}

void Emitter::add_standard(const BitConstant& k, Bits x, std::optional<Qubit> b)
{
    const int w = x.width;
    for (int i = 1; i <= w - 1; ++i)
        maj(k[i - 1], x[i - 1], C(i - 1), C(i), Site::Compute);
    for (int i = w - 1; i >= 1; --i) {
        add_bit(k[i], x[i], b);
        add_carry(C(i), x[i], b);
        maj(k[i - 1], x[i - 1], C(i - 1), C(i), Site::Uncompute);
    }
    add_bit(k[0], x[0], b);
}

void Emitter::add_blocked(const BitConstant& k, Bits x, std::optional<Qubit> b)
{
    const int w = x.width;
    const Blocking bl = blocking(w);
    const int m = bl.m;
    auto carry_chain = [&](int base, int size, Site site) {
        if (site == Site::Compute)
            for (int j = 1; j <= size - 1; ++j)
                maj(k[base + j - 1], x[base + j - 1], D(j - 1), D(j), site);
        else
            for (int j = size - 1; j >= 1; --j)
                maj(k[base + j - 1], x[base + j - 1], D(j - 1), D(j), site);
    };
    auto load = [&](int blk) {
        if (blk > 0)
            out_.add(Gate::xor_gate(C(blk), D(0)));
    };

    for (int blk = 0; blk <= bl.nb - 2; ++blk) {
        const int base = blk * m;
        load(blk);
        carry_chain(base, m, Site::Compute);
        maj(k[base + m - 1], x[base + m - 1], D(m - 1), C(blk + 1), Site::Compute);
        carry_chain(base, m, Site::Uncompute);
        load(blk);
    }

    {
        const int blk = bl.nb - 1;
        const int base = blk * m;
        load(blk);
        carry_chain(base, bl.last, Site::Compute);
        for (int j = bl.last - 1; j >= 1; --j) {
            add_bit(k[base + j], x[base + j], b);
            add_carry(D(j), x[base + j], b);
            maj(k[base + j - 1], x[base + j - 1], D(j - 1), D(j), Site::Uncompute);
        }
        load(blk);
    }

    for (int blk = bl.nb - 2; blk >= 0; --blk) {
        const int base = blk * m;
        load(blk);
        carry_chain(base, m, Site::Compute);
        add_bit(k[base + m], x[base + m], b);
        add_carry(C(blk + 1), x[base + m], b);
        maj(k[base + m - 1], x[base + m - 1], D(m - 1), C(blk + 1), Site::Uncompute);
        for (int j = m - 1; j >= 1; --j) {
            add_bit(k[base + j], x[base + j], b);
            add_carry(D(j), x[base + j], b);
            maj(k[base + j - 1], x[base + j - 1], D(j - 1), D(j), Site::Uncompute);
        }
        load(blk);
    }

    add_bit(k[0], x[0], b);
}

void Emitter::test_equality(const BitConstant& k, Bits x, Qubit b)
{
    if (k.width() != x.width)
        throw std::invalid_argument("test_equality: constant width differs from register width");
    if (x.width == 0)
        return;
    out_.begin_span("test_equality");
    if (mode_ == Mode::Standard)
        compare_standard(k, x, b, false, false);
    else
        compare_blocked(k, x, b, false, false);
    out_.end_span("test_equality");
}

void Emitter::test_greater_than(const BitConstant& k, Bits x, Qubit b, bool is_signed)
{
    if (k.width() != x.width)
        throw std::invalid_argument("test_greater_than: constant width differs from register width");
    if (x.width == 0)
        return;
    out_.begin_span("test_greater_than");
    if (mode_ == Mode::Standard)
        compare_standard(k, x, b, true, is_signed);
    else
        compare_blocked(k, x, b, true, is_signed);
    out_.end_span("test_greater_than");
}

void Emitter::compare_standard(const BitConstant& k, Bits x, Qubit b, bool greater, bool is_signed)
{
    const int w = x.width;
    const int top = w - 1;
    literal_copy(x[top], k[top], C(top));
    if (greater) {
        if (is_signed && k[top])
            out_.add(Gate::xor_neg(x[top], b));
        else if (!is_signed && !k[top])
            out_.add(Gate::xor_gate(x[top], b));
    }
    for (int i = w - 2; i >= 0; --i) {
        and_gate(C(i + 1), false, x[i], !k[i], C(i), Site::Compute);
        if (greater && !k[i])
            and_gate(C(i + 1), false, x[i], false, b, Site::Compute);
    }
    if (!greater)
        out_.add(Gate::xor_gate(C(0), b));
    for (int i = 0; i <= w - 2; ++i)
        and_gate(C(i + 1), false, x[i], !k[i], C(i), Site::Uncompute);
    literal_copy(x[top], k[top], C(top));
}

void Emitter::compare_blocked(const BitConstant& k, Bits x, Qubit b, bool greater, bool is_signed)
{
    const int w = x.width;
    const Blocking bl = blocking(w);
    const int m = bl.m;
    auto size_of = [&](int blk) { return blk == bl.nb - 1 ? bl.last : m; };
    auto enable = [&](int blk) {
        const Qubit e = D(size_of(blk));
        if (blk == bl.nb - 1)
            out_.add(Gate::not_gate(e));
        else
            out_.add(Gate::xor_gate(C(blk + 1), e));
    };
    auto greater_step = [&](Qubit e, int t) {
        if (!greater)
            return;
        if (t == w - 1 && is_signed) {
            if (k[t])
                and_gate(x[t], true, e, false, b, Site::Compute);
        } else if (!k[t]) {
            and_gate(e, false, x[t], false, b, Site::Compute);
        }
    };
    auto chain = [&](int base, int size, Site site) {
        if (site == Site::Compute)
            for (int j = size - 1; j >= 1; --j)
                and_gate(D(j + 1), false, x[base + j], !k[base + j], D(j), site);
        else
            for (int j = 1; j <= size - 1; ++j)
                and_gate(D(j + 1), false, x[base + j], !k[base + j], D(j), site);
    };

    for (int blk = bl.nb - 1; blk >= 0; --blk) {
        const int base = blk * m;
        const int size = size_of(blk);
        enable(blk);
        for (int j = size - 1; j >= 1; --j) {
            and_gate(D(j + 1), false, x[base + j], !k[base + j], D(j), Site::Compute);
            greater_step(D(j + 1), base + j);
        }
        and_gate(D(1), false, x[base], !k[base], C(blk), Site::Compute);
        greater_step(D(1), base);
        chain(base, size, Site::Uncompute);
        enable(blk);
    }
    if (!greater)
        out_.add(Gate::xor_gate(C(0), b));
    for (int blk = 0; blk <= bl.nb - 1; ++blk) {
        const int base = blk * m;
        const int size = size_of(blk);
        enable(blk);
        chain(base, size, Site::Compute);
        and_gate(D(1), false, x[base], !k[base], C(blk), Site::Uncompute);
        chain(base, size, Site::Uncompute);
        enable(blk);
    }
}

// ---------------------------------------------------------------- machines

Machine make_machine(int n, Mode mode)
{
    if (n < 2 || n > kMaxCompileN)
        throw std::out_of_range("compile supports 2 <= n <= 64");
    Machine m;
    Qubit next = 0;
    const int ws = s_register_width(n);
    m.circuit.layout.regs.push_back({"X", 0, static_cast<Qubit>(n + 1), true, false, false});
    next = static_cast<Qubit>(n + 1);
    m.circuit.layout.regs.push_back({"S", next, next + static_cast<Qubit>(ws), false, true, true});
    next += static_cast<Qubit>(ws);
    auto need = max_demand(mode, n + 1);
    add_banks(m, next, need.first, need.second);
    add_flags(m, next);
    m.circuit.qubit_count = next;
    m.regs[Reg::X] = m.circuit.layout.regs[0];
    m.regs[Reg::S] = m.circuit.layout.regs[1];
    return m;
}

Machine make_custom_machine(const std::vector<std::pair<Reg, std::pair<int, bool>>>& regs, Mode mode)
{
    Machine m;
    Qubit next = 0;
    int widest = 1;
    for (const auto& [r, shape] : regs) {
        const auto [width, is_signed] = shape;
        Register reg{reg_label(r), next, next + static_cast<Qubit>(width), is_signed, false, false};
        m.circuit.layout.regs.push_back(reg);
        m.regs[r] = reg;
        next += static_cast<Qubit>(width);
        widest = std::max(widest, width);
    }
    auto need = max_demand(mode, widest);
    add_banks(m, next, need.first, need.second);
    add_flags(m, next);
    m.circuit.qubit_count = next;
    return m;
}

// ---------------------------------------------------------------- statements

namespace {

struct Lowering {
    Machine& m;
    Mode mode;
    PhaseMode phase;

    Emitter emitter() { return Emitter(m.circuit, m.ws, mode, phase); }

    Circuit capture(const std::function<void(Emitter&)>& body)
    {
        return emitter().capture(body);
    }

    // Folds X > t over a register view; returns +1 always, -1 never, 0 when data-dependent.
    static int fold_greater(long double t, int width, bool is_signed)
    {
        Range r = range_of(width, is_signed);
        if (t < r.lo)
            return 1;
        if (t >= r.hi)
            return -1;
        return 0;
    }

    void add(const Register& target, int width, std::int64_t amount, std::optional<Qubit> b)
    {
        if (width == 0 || amount == 0)
            return;
        emitter().conditional_add(BitConstant::from_int(amount, width), Bits{target.lo, width}, b);
    }

    void emit(const Statement& s)
    {
        const StatementKind kind = classify(s);
        if (s.action.kind == Action::Kind::Add && s.action.amount < 0) {
            // Subtraction is the time reverse of the matching addition.
            Statement pos = s;
            pos.action.amount = -s.action.amount;
            Circuit frag;
            frag.qubit_count = m.circuit.qubit_count;
            Machine scratch{frag, m.regs, m.flag0, m.flag1, m.ws};
            Lowering{scratch, mode, phase}.emit(pos);
            m.circuit.append(invert_circuit(scratch.circuit));
            return;
        }
        const std::string span(statement_kind_name(kind));
        m.circuit.begin_span(span);
        switch (kind) {
        case StatementKind::UnconditionalAdd: unconditional(s); break;
        case StatementKind::BitConditionalAdd: bit_conditional(s); break;
        case StatementKind::InequalityConditionalAdd: inequality_conditional(s); break;
        case StatementKind::EqualityBitConditionalAdd: equality_bit(s); break;
        case StatementKind::EqualityInequalityFlip: equality_inequality(s); break;
        }
        m.circuit.end_span(span);
    }

    void unconditional(const Statement& s)
    {
        const Register& r = reg_for(m, s.action.reg);
        add(r, static_cast<int>(r.size()), s.action.amount, std::nullopt);
    }

    void bit_conditional(const Statement& s)
    {
        const Condition& g = s.guards[0];
        const Register& q = reg_for(m, g.reg);
        const Register& r = reg_for(m, s.action.reg);
        if (g.reg == s.action.reg)
            throw std::invalid_argument("control bit lies inside the target register: " + s.id);
        if (g.kind == Condition::Kind::BitSet) {
            if (g.index < 0 || g.index >= static_cast<int>(q.size()))
                throw std::invalid_argument("control bit outside its register: " + s.id);
            add(r, static_cast<int>(r.size()), s.action.amount, q.lo + static_cast<Qubit>(g.index));
            return;
        }
        if (!q.is_signed) {
            add(r, static_cast<int>(r.size()), s.action.amount, std::nullopt);
            return;
        }
        const Qubit sign = q.hi - 1;
        m.circuit.add(Gate::not_gate(sign));
        add(r, static_cast<int>(r.size()), s.action.amount, sign);
        m.circuit.add(Gate::not_gate(sign));
    }

    void inequality_conditional(const Statement& s)
    {
        const Condition& g = s.guards[0];
        const Register& q = reg_for(m, g.reg);
        const Register& r = reg_for(m, s.action.reg);
        if (g.reg == s.action.reg)
            throw std::invalid_argument("comparison operand is the target register: " + s.id);
        const bool at_most = g.kind == Condition::Kind::AtMost;
        const std::int64_t t = at_most ? g.value : g.value - 1;
        const int width = static_cast<int>(q.size());
        int f = fold_greater(static_cast<long double>(t), width, q.is_signed);
        if (at_most)
            f = -f;
        if (f < 0)
            return;
        if (f > 0) {
            add(r, static_cast<int>(r.size()), s.action.amount, std::nullopt);
            return;
        }
        Circuit test = capture([&](Emitter& e) {
            e.test_greater_than(BitConstant::from_int(t, width), bits_of(q), m.flag0, q.is_signed);
        });
        m.circuit.append(test);
        if (at_most)
            m.circuit.add(Gate::not_gate(m.flag0));
        add(r, static_cast<int>(r.size()), s.action.amount, m.flag0);
        if (at_most)
            m.circuit.add(Gate::not_gate(m.flag0));
        m.circuit.append(invert_circuit(test));
    }

    // Emits the equality test into flag0; returns false when it can never hold.
    bool equality_flag(const Condition& eq, Circuit& test)
    {
        const Register& q = reg_for(m, eq.reg);
        const int width = static_cast<int>(q.size());
        Range r = range_of(width, q.is_signed);
        const auto v = static_cast<long double>(eq.value);
        if (v < r.lo || v > r.hi)
            return false;
        test = capture([&](Emitter& e) {
            e.test_equality(BitConstant::from_int(eq.value, width), bits_of(q), m.flag0);
        });
        return true;
    }

    void equality_bit(const Statement& s)
    {
        const Condition& eq = *find_guard(s, Condition::Kind::Equals);
        const Condition& bit = *find_guard(s, Condition::Kind::BitSet);
        const Register& p = reg_for(m, bit.reg);
        const Register& r = reg_for(m, s.action.reg);
        if (eq.reg == s.action.reg)
            throw std::invalid_argument("equality operand is the target register: " + s.id);
        // Adding into the register that holds the control bit only touches bits below it.
        const int width = bit.reg == s.action.reg ? bit.index : static_cast<int>(r.size());
        if (width == 0 || s.action.amount == 0)
            return;
        Circuit test;
        if (!equality_flag(eq, test))
            return;
        if (bit.index < 0 || bit.index >= static_cast<int>(p.size()))
            throw std::invalid_argument("control bit outside its register: " + s.id);
        const Qubit control = p.lo + static_cast<Qubit>(bit.index);
        m.circuit.append(test);
        emitter().flag_and(m.flag0, control, m.flag1, true);
        add(r, width, s.action.amount, m.flag1);
        emitter().flag_and(m.flag0, control, m.flag1, false);
        m.circuit.append(invert_circuit(test));
    }

    void equality_inequality(const Statement& s)
    {
        const Condition& eq = *find_guard(s, Condition::Kind::Equals);
        const Condition& cmp = *find_guard(s, Condition::Kind::TruncAtLeast);
        const Register& p = reg_for(m, cmp.reg);
        const Register& r = reg_for(m, s.action.reg);
        if (s.action.bit < 0 || s.action.bit >= static_cast<int>(r.size()))
            throw std::invalid_argument("flipped bit outside its register: " + s.id);
        const Qubit target = r.lo + static_cast<Qubit>(s.action.bit);
        const bool whole = cmp.index < 0;
        const int width = whole ? static_cast<int>(p.size()) : cmp.index;
        const bool is_signed = whole && p.is_signed;
        if (width > static_cast<int>(p.size()))
            throw std::invalid_argument("truncation wider than its register: " + s.id);
        if (target >= p.lo && target < p.lo + static_cast<Qubit>(width))
            throw std::invalid_argument("flipped bit lies inside the compared bits: " + s.id);
        if (eq.reg == s.action.reg && target >= reg_for(m, eq.reg).lo && target < reg_for(m, eq.reg).hi)
            throw std::invalid_argument("flipped bit lies inside the equality operand: " + s.id);
        const std::int64_t t = cmp.value - 1;
        const int f = fold_greater(static_cast<long double>(t), width, is_signed);
        if (f < 0)
            return;
        Circuit test;
        if (!equality_flag(eq, test))
            return;
        m.circuit.append(test);
        if (f > 0) {
            m.circuit.add(Gate::xor_gate(m.flag0, target));
        } else {
            Circuit gt = capture([&](Emitter& e) {
                e.test_greater_than(BitConstant::from_int(t, width), Bits{p.lo, width}, m.flag1, is_signed);
            });
            m.circuit.append(gt);
            m.circuit.add(Gate::toffoli(m.flag0, m.flag1, target));
            m.circuit.append(invert_circuit(gt));
        }
        m.circuit.append(invert_circuit(test));
    }
};

} // namespace

void emit_statement(Machine& m, const Statement& s, Mode mode, PhaseMode phase)
{
    Lowering{m, mode, phase}.emit(s);
}

Circuit compile_statements(Machine m, const std::vector<Statement>& prog, Mode mode, PhaseMode phase)
{
    for (const Statement& s : prog)
        emit_statement(m, s, mode, phase);
    return std::move(m.circuit);
}

Circuit compile(ProgramId p, const CompileOptions& opts)
{
    if (p != ProgramId::FinalSchumacher && p != ProgramId::FinalSchumacherInverse)
        throw std::invalid_argument("only the final programs compile to circuits");
    Machine m = make_machine(opts.n, opts.mode);
    Circuit c = compile_statements(std::move(m), build_program(p, opts.n), opts.mode, opts.phase);
    return opts.lower_two_bit ? lower_two_bit(c) : c;
}

Circuit compile_subroutine(Subroutine s, const BitConstant& k, Mode mode, PhaseMode phase, bool is_signed)
{
    const int w = k.width();
    if (w < 1)
        throw std::invalid_argument("subroutine width must be positive");
    Machine m;
    Qubit next = static_cast<Qubit>(w);
    m.circuit.layout.regs.push_back({"X", 0, next, is_signed, false, false});
    m.circuit.layout.regs.push_back({"B", next, next + 1, false, false, false});
    const Qubit b = next++;
    auto need = bank_demand(mode, w);
    add_banks(m, next, need.first, need.second);
    m.circuit.qubit_count = next;
    Emitter e(m.circuit, m.ws, mode, phase);
    const Bits x{0, w};
    switch (s) {
    case Subroutine::ConditionalAdd: e.conditional_add(k, x, b); break;
    case Subroutine::UnconditionalAdd: e.conditional_add(k, x, std::nullopt); break;
    case Subroutine::TestEquality: e.test_equality(k, x, b); break;
    case Subroutine::TestGreaterThan: e.test_greater_than(k, x, b, is_signed); break;
    }
    return std::move(m.circuit);
}

} // namespace schumacher
