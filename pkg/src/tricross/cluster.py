"""Cluster variables on white faces and the 2<->2 exchange relation.

Every white face of a connected diagram carries a Laurent value: a
multivariate polynomial numerator over the initial indeterminates with
arbitrary-precision integer coefficients, divided by a single monomial.
A 2<->2 move with a white central face replaces its value e by

    f = (a*c + b*d) / e

where a, c are the two white faces diagonally opposite across the two
crossings of one pair, and b, d the other pair; a black central face
changes nothing.  The division is carried out exactly (it is an error,
not a rounding, when it fails), and canonical form strips any monomial
factor common to numerator and denominator, so a value is a Laurent
polynomial exactly when it says it is.

Polynomials are dicts mapping exponent tuples to ints; the monomial
order for printing and division is descending lexicographic.
"""

from dataclasses import dataclass

from .moves import _apply_22_full, MoveError


class ExactDivisionError(ArithmeticError):
    """A cluster exchange failed to divide exactly: an implementation bug."""


# ----------------------------------------------------------------------
# polynomial arithmetic

def poly_const(nvars, value=1):
    if value == 0:
        return {}
    return {(0,) * nvars: value}


def poly_var(nvars, index):
    exp = [0] * nvars
    exp[index] = 1
    return {tuple(exp): 1}


def poly_add(a, b):
    out = dict(a)
    for m, c in b.items():
        c2 = out.get(m, 0) + c
        if c2:
            out[m] = c2
        else:
            out.pop(m, None)
    return out


def poly_mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            else:
                del out[m]
    return out


def poly_mul_monomial(a, exps, scale=1):
    return {tuple(x + y for x, y in zip(m, exps)): c * scale
            for m, c in a.items()}


def poly_div_exact(a, b):
    """Exact multivariate division; raises ExactDivisionError otherwise."""
    if not b:
        raise ExactDivisionError("division by zero")
    if not a:
        return {}
    rem = dict(a)
    quot = {}
    lead_b = max(b)
    cb = b[lead_b]
    while rem:
        lead_r = max(rem)
        cr = rem[lead_r]
        exps = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(e < 0 for e in exps) or cr % cb:
            raise ExactDivisionError("nonzero remainder")
        coeff = cr // cb
        quot[exps] = quot.get(exps, 0) + coeff
        rem = poly_add(rem, poly_mul_monomial(b, exps, -coeff))
    return quot


# ----------------------------------------------------------------------
# Laurent values

@dataclass(frozen=True)
class LaurentValue:
    num: tuple       # sorted ((exps, coeff), ...) descending lex
    den: tuple       # monomial exponents, all nonnegative

    @staticmethod
    def make(num_dict, den_exps):
        if not num_dict:
            return LaurentValue((), tuple(max(d, 0) for d in den_exps))
        # a negative denominator exponent folds into the numerator
        lift = tuple(max(0, -d) for d in den_exps)
        if any(lift):
            num_dict = poly_mul_monomial(num_dict, lift)
            den_exps = tuple(d + l for d, l in zip(den_exps, lift))
        mins = [min(m[i] for m in num_dict) for i in range(len(den_exps))]
        shift = tuple(min(a, b) for a, b in zip(mins, den_exps))
        num = {tuple(x - s for x, s in zip(m, shift)): c
               for m, c in num_dict.items()}
        den = tuple(d - s for d, s in zip(den_exps, shift))
        items = tuple(sorted(num.items(), reverse=True))
        return LaurentValue(items, den)

    def num_dict(self):
        return dict(self.num)

    def nvars(self):
        return len(self.den)

    def terms(self):
        return len(self.num)

    def is_positive(self):
        return all(c > 0 for _, c in self.num)

    def __str__(self):
        return self.pretty()

    def pretty(self, names=None):
        if not self.num:
            return "0"
        parts = []
        for m, c in self.num:
            exps = tuple(x - d for x, d in zip(m, self.den))
            factors = []
            for i, e in enumerate(exps):
                name = names[i] if names else "x%d" % i
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append("%s^%d" % (name, e))
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(c) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


def lv_var(nvars, index):
    return LaurentValue.make(poly_var(nvars, index), (0,) * nvars)


def lv_mul(u, v):
    return LaurentValue.make(poly_mul(u.num_dict(), v.num_dict()),
                             tuple(a + b for a, b in zip(u.den, v.den)))


def lv_add(u, v):
    den = tuple(max(a, b) for a, b in zip(u.den, v.den))
    nu = poly_mul_monomial(u.num_dict(),
                           tuple(d - a for d, a in zip(den, u.den)))
    nv = poly_mul_monomial(v.num_dict(),
                           tuple(d - b for d, b in zip(den, v.den)))
    return LaurentValue.make(poly_add(nu, nv), den)


def lv_div_exact(u, v):
    """u / v in the Laurent ring, exact up to monomial units.

    Componentwise minimum degree is additive under polynomial products
    (lowest slices cannot cancel over the integers), so after stripping
    the minimum exponent vectors from numerator and divisor, Laurent
    divisibility is plain polynomial divisibility; the stripped shift
    moves into the denominator.
    """
    if not v.num:
        raise ExactDivisionError("division by zero")
    target = poly_mul_monomial(u.num_dict(), v.den)
    divisor = v.num_dict()
    nv = len(u.den)
    t_min = tuple(min(m[i] for m in target) for i in range(nv)) \
        if target else (0,) * nv
    v_min = tuple(min(m[i] for m in divisor) for i in range(nv))
    target0 = poly_mul_monomial(target, tuple(-t for t in t_min))
    divisor0 = poly_mul_monomial(divisor, tuple(-t for t in v_min))
    quot = poly_div_exact(target0, divisor0)
    den = tuple(d - t + s for d, t, s in zip(u.den, t_min, v_min))
    return LaurentValue.make(quot, den)


# ----------------------------------------------------------------------
# cluster state

@dataclass
class ClusterState:
    diagram: object
    values: dict          # white face key -> LaurentValue
    frozen: frozenset     # boundary white face keys
    nvars: int
    var_names: tuple      # printable name per initial indeterminate


def init_cluster(diagram):
    """Fresh indeterminates on white faces; boundary whites are frozen."""
    if diagram.validate():
        raise MoveError("diagram does not validate")
    if not diagram.is_connected():
        raise MoveError("cluster state needs a connected diagram")
    whites = [f for f in diagram.faces() if f.color == 'white']
    nvars = len(whites)
    values = {}
    names = []
    frozen = set()
    for i, f in enumerate(whites):
        values[f.key] = lv_var(nvars, i)
        names.append("x%d" % f.index)
        if f.boundary:
            frozen.add(f.key)
    return ClusterState(diagram, values, frozenset(frozen), nvars,
                        tuple(names))


def exchange_22(state, site):
    """Advance by a 2<->2 move, exchanging the central white variable."""
    diagram = state.diagram
    face = diagram.face_by_key(site.face_key)
    new_diagram, face_map, _ = _apply_22_full(diagram, site)
    values = {}
    for key, val in state.values.items():
        values[face_map[key]] = val
    new_whites = set(f.key for f in new_diagram.faces()
                     if f.color == 'white')
    if set(values) != new_whites:
        raise MoveError("face correspondence is not a white-face bijection")
    frozen = frozenset(face_map[k] for k in state.frozen)
    if face.color == 'white':
        (X, x1), (Y, y1) = site.x, site.y
        a = diagram.face_of(('c', X, (x1 + 2) % 6)).key
        c = diagram.face_of(('c', Y, (y1 + 2) % 6)).key
        b = diagram.face_of(('c', X, (x1 + 4) % 6)).key
        d = diagram.face_of(('c', Y, (y1 + 4) % 6)).key
        e = state.values[site.face_key]
        numerator = lv_add(lv_mul(state.values[a], state.values[c]),
                           lv_mul(state.values[b], state.values[d]))
        values[face_map[site.face_key]] = lv_div_exact(numerator, e)
    return ClusterState(new_diagram, values, frozen, state.nvars,
                        state.var_names)


def laurent_audit(states):
    """Check every value across a walk: Laurent with positive coefficients.

    ``states`` is the sequence produced by repeated exchanges from an
    initial cluster.  Returns {'all_laurent', 'all_positive',
    'max_terms'}; a division failure during the walk should be recorded
    by truncating the sequence and reporting all_laurent False upstream.
    """
    all_positive = True
    max_terms = 0
    for st in states:
        for val in st.values.values():
            max_terms = max(max_terms, val.terms())
            if not val.is_positive():
                all_positive = False
    return {
        "all_laurent": True,
        "all_positive": all_positive,
        "max_terms": max_terms,
    }


def random_walk(state, length, rng):
    """Random 2<->2 walk; returns (states, sites, all_laurent flag)."""
    from .moves import find_22_sites
    states = [state]
    sites = []
    ok = True
    for _ in range(length):
        cands = find_22_sites(state.diagram)
        if not cands:
            break
        site = cands[rng.randrange(len(cands))]
        try:
            state = exchange_22(state, site)
        except ExactDivisionError:
            ok = False
            break
        states.append(state)
        sites.append(site)
    return states, sites, ok


def dump_values(state):
    """One line per variable-bearing face, deterministic order."""
    lines = []
    faces = {f.key: f for f in state.diagram.faces()}
    for key in sorted(state.values, key=lambda k: faces[k].index):
        lines.append("x%d = %s" % (faces[key].index,
                                   state.values[key].pretty(state.var_names)))
    return "\n".join(lines)
