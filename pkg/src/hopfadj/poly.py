"""Univariate polynomials over a FieldSpec as coefficient lists, constant
term first.  Only what char/min poly reporting needs."""

from fractions import Fraction
from math import lcm as lcm_int


def trim(f):
    f = list(f)
    while len(f) > 1 and not f[-1]:
        f.pop()
    return f


def is_zero(f):
    return all(not c for c in f)


def mul(field, f, g):
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = field.norm(out[i + j] + a * b)
    return trim(out)


def monic(field, f):
    f = trim(f)
    inv = field.inv(f[-1])
    return [field.norm(c * inv) for c in f]


def divmod_(field, f, g):
    f, g = trim(f), trim(g)
    if is_zero(g):
        raise ZeroDivisionError("polynomial division by zero")
    inv = field.inv(g[-1])
    q = [field.zero] * max(1, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g) and not is_zero(r):
        c = field.norm(r[-1] * inv)
        s = len(r) - len(g)
        q[s] = c
        for i, b in enumerate(g):
            r[s + i] = field.norm(r[s + i] - c * b)
        r = trim(r[:-1]) if len(r) > 1 else [field.zero]
    return trim(q), trim(r)


def gcd(field, f, g):
    f, g = trim(f), trim(g)
    while not is_zero(g):
        f, g = g, divmod_(field, f, g)[1]
    return monic(field, f) if not is_zero(f) else f


def lcm(field, f, g):
    q, r = divmod_(field, mul(field, f, g), gcd(field, f, g))
    assert is_zero(r)
    return monic(field, q)


def pow_(field, f, k):
    out = [field.one]
    for _ in range(k):
        out = mul(field, out, f)
    return out


def derivative(field, f):
    return trim([field.norm(i * c) for i, c in enumerate(f)][1:] or [field.zero])


def evaluate(field, f, x):
    acc = field.zero
    for c in reversed(f):
        acc = field.norm(acc * x + c)
    return acc


def _divisors(n):
    n = abs(n)
    return [k for k in range(1, n + 1) if n % k == 0] if n else [1]


def _roots(field, f):
    """Roots in the base field (rational roots over Q, all residues over F_p)."""
    if field.p is not None:
        return [x for x in range(field.p) if not evaluate(field, f, x)]
    den = 1
    for c in f:
        den = lcm_int(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in f]
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = {Fraction(0)} if not evaluate(field, f, 0) else set()
    if len(ints) < 2:
        return sorted(roots)
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for s in (1, -1):
                x = Fraction(s * a, b)
                if not evaluate(field, f, field.norm(x)):
                    roots.add(x)
    return sorted(field.norm(r) for r in roots)


def factor(field, f):
    """Factor a monic polynomial into ``[(factor, multiplicity)]``.

    Linear factors are split off over the base field; what remains is
    separated by square-free decomposition only, so an irreducible-looking
    factor in the output may still split further.  Meant for display.
    """
    f = monic(field, f)
    out = []
    for r in _roots(field, f):
        lin = [field.norm(-r), field.one]
        m = 0
        while True:
            q, rem = divmod_(field, f, lin)
            if not is_zero(rem):
                break
            f, m = q, m + 1
        if m:
            out.append((lin, m))
    if len(f) > 1:
        out.extend(_squarefree(field, f))
    # higher degree first, then larger (signed) constant term: (λ²+1)(λ+1)(λ−1)
    out.sort(key=lambda t: (-len(t[0]), [-_signed(field, c) for c in t[0]]))
    return out


def _signed(field, c):
    if field.p is not None and c > field.p // 2:
        return c - field.p
    return c


def _squarefree(field, f):
    """Yun's square-free decomposition; exact in characteristic 0 and for
    F_p whenever the degree is below p."""
    f = monic(field, f)
    d = derivative(field, f)
    if is_zero(d):
        return [(f, 1)]
    a = gcd(field, f, d)
    b = divmod_(field, f, a)[0]
    c = divmod_(field, d, a)[0]
    dd = _sub(field, c, derivative(field, b))
    res = []
    i = 1
    while len(b) > 1:
        a = gcd(field, b, dd)
        b = divmod_(field, b, a)[0]
        c = divmod_(field, dd, a)[0]
        dd = _sub(field, c, derivative(field, b))
        if len(a) > 1:
            res.append((monic(field, a), i))
        i += 1
    return res


def _sub(field, f, g):
    n = max(len(f), len(g))
    f = list(f) + [field.zero] * (n - len(f))
    g = list(g) + [field.zero] * (n - len(g))
    return trim([field.norm(x - y) for x, y in zip(f, g)])


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def to_str(field, f, var="λ"):
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if field.p is not None and c > field.p // 2 and field.p != 2:
            c = c - field.p
        neg = c < 0
        a = -c if neg else c
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}{str(i).translate(_SUP)}"
            body = mono if a == 1 else f"{a}{mono}"
        terms.append(("−" if neg else "+", body))
    if not terms:
        return "0"
    s = ("−" if terms[0][0] == "−" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += sign + body
    return s


def factored_str(field, f, var="λ"):
    parts = []
    for fac, m in factor(field, f):
        s = f"({to_str(field, fac, var)})"
        if m > 1:
            s += str(m).translate(_SUP)
        parts.append(s)
    return "".join(parts) or "1"
