"""Exact scalar fields: rationals (Fraction) and prime fields GF(p)."""
from fractions import Fraction


class Fp:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = int(v) % p

    def _coerce(self, other):
        if isinstance(other, Fp):
            return other.v
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return int(other)

    def __add__(self, o):
        return Fp(self.v + self._coerce(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return Fp(self.v - self._coerce(o), self.p)

    def __rsub__(self, o):
        return Fp(self._coerce(o) - self.v, self.p)

    def __mul__(self, o):
        return Fp(self.v * self._coerce(o), self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        d = self._coerce(o) % self.p
        if d == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, o):
        return Fp(self._coerce(o), self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, o):
        if isinstance(o, (int, Fp, Fraction)):
            return self.v == self._coerce(o) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v

    def __int__(self):
        return self.v


class RationalField:
    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    def elements(self):
        raise ValueError("the rational field is infinite")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p):
        p = int(p)
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("field characteristic must be prime, got %r" % p)
        self.p = p
        self.name = str(p)
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x):
        if isinstance(x, Fp):
            return Fp(x.v, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes in GF(%d)" % self.p)
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(x, self.p)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()


def field_from_name(name):
    """'rational' gives QQ; a prime number (as str or int) gives GF(p)."""
    if name is None or str(name).lower() in ("rational", "q", "qq"):
        return QQ
    return PrimeField(int(name))
