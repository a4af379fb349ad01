"""Prime-order elliptic curve groups with canonical encodings.

Two instantiations are provided: a toy curve whose order fits in 20 bits
(so full discrete logs are recoverable by brute force in tests) and the
standard secp256k1 parameter set.  Scalars are plain ints reduced mod the
group order; points are immutable `Point` objects supporting `+`, `-` and
scalar `*`.
"""

from __future__ import annotations

import math


class MalformedPoint(ValueError):
    """Bytes do not decode to a canonical on-curve point."""


class DlogNotFound(Exception):
    """No discrete log below the requested bound."""


def _sqrt_mod(a: int, p: int) -> int | None:
    """Square root mod an odd prime p, or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class Point:
    """Immutable point on a `Curve`; ``x is None`` marks the identity."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: "Curve", x: int | None, y: int | None):
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, *_):
        raise AttributeError("points are immutable")

    def is_identity(self) -> bool:
        return self.x is None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Point)
            and self.curve is other.curve
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self):
        return hash((id(self.curve), self.x, self.y))

    def __add__(self, other: "Point") -> "Point":
        return self.curve.add(self, other)

    def __sub__(self, other: "Point") -> "Point":
        return self.curve.add(self, self.curve.neg(other))

    def __neg__(self) -> "Point":
        return self.curve.neg(self)

    def __rmul__(self, k: int) -> "Point":
        return self.curve.mul(k, self)

    def __repr__(self):
        if self.is_identity():
            return f"Point({self.curve.name}, identity)"
        return f"Point({self.curve.name}, {self.x:#x}, {self.y:#x})"


class Curve:
    """Short Weierstrass curve y^2 = x^3 + ax + b over F_p with prime order q."""

    def __init__(self, name: str, p: int, a: int, b: int,
                 gx: int, gy: int, order: int):
        self.name = name
        self.p = p
        self.a = a
        self.b = b
        self.q = order
        self.coord_byte_len = (p.bit_length() + 7) // 8
        self.scalar_byte_len = (order.bit_length() + 7) // 8
        self.point_byte_len = 1 + self.coord_byte_len
        self.generator = Point(self, gx, gy)
        self.identity = Point(self, None, None)
        # hot-point acceleration: points multiplied often get a comb table
        self._mul_counts: dict[tuple, int] = {}
        self._comb_tables: dict[tuple, list] = {}

    # -- group law ---------------------------------------------------------

    def is_on_curve(self, P: Point) -> bool:
        if P.is_identity():
            return True
        x, y, p = P.x, P.y, self.p
        return (y * y - (x * x * x + self.a * x + self.b)) % p == 0

    def neg(self, P: Point) -> Point:
        if P.is_identity():
            return P
        return Point(self, P.x, (-P.y) % self.p)

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_identity():
            return Q
        if Q.is_identity():
            return P
        p = self.p
        if P.x == Q.x:
            if (P.y + Q.y) % p == 0:
                return self.identity
            lam = (3 * P.x * P.x + self.a) * pow(2 * P.y, p - 2, p) % p
        else:
            lam = (Q.y - P.y) * pow(Q.x - P.x, p - 2, p) % p
        x3 = (lam * lam - P.x - Q.x) % p
        y3 = (lam * (P.x - x3) - P.y) % p
        return Point(self, x3, y3)

    def _jac_double(self, rx, ry, rz):
        p = self.p
        if ry == 0:
            return None
        ysq = ry * ry % p
        s = 4 * rx * ysq % p
        zz = rz * rz % p
        m = (3 * rx * rx + self.a * zz * zz) % p
        nx = (m * m - 2 * s) % p
        ny = (m * (s - nx) - 8 * ysq * ysq) % p
        nz = 2 * ry * rz % p
        return nx, ny, nz

    def _jac_add_affine(self, rx, ry, rz, qx, qy):
        """(rx,ry,rz) + (qx,qy,1); None means the point at infinity."""
        p = self.p
        zz = rz * rz % p
        u2 = qx * zz % p
        s2 = qy * zz * rz % p
        if u2 == rx:
            if s2 != ry:
                return None
            return self._jac_double(rx, ry, rz)
        h = (u2 - rx) % p
        r = (s2 - ry) % p
        hh = h * h % p
        hhh = hh * h % p
        v = rx * hh % p
        nx = (r * r - hhh - 2 * v) % p
        ny = (r * (v - nx) - ry * hhh) % p
        nz = rz * h % p
        return nx, ny, nz

    def _jac_to_point(self, jac) -> Point:
        if jac is None:
            return self.identity
        rx, ry, rz = jac
        p = self.p
        zinv = pow(rz, p - 2, p)
        zinv2 = zinv * zinv % p
        return Point(self, rx * zinv2 % p, ry * zinv2 * zinv % p)

    _COMB_WINDOW = 4
    _HOT_THRESHOLD = 8

    def _build_comb(self, P: Point) -> list:
        """table[t][j-1] = j * 2^(4t) * P as affine pairs."""
        windows = (self.q.bit_length() + self._COMB_WINDOW - 1) // self._COMB_WINDOW
        table = []
        base = P
        for _ in range(windows):
            row = []
            cur = base
            for _ in range(15):
                row.append((cur.x, cur.y))
                cur = cur + base
            table.append(row)
            base = cur  # 16 * base
        return table

    def mul(self, k: int, P: Point) -> Point:
        k %= self.q
        if k == 0 or P.is_identity():
            return self.identity
        key = (P.x, P.y)
        table = self._comb_tables.get(key)
        if table is None:
            count = self._mul_counts.get(key, 0) + 1
            self._mul_counts[key] = count
            if count >= self._HOT_THRESHOLD:
                table = self._build_comb(P)
                self._comb_tables[key] = table
                del self._mul_counts[key]
        if table is not None:
            acc = None
            t = 0
            while k:
                digit = k & 0xF
                if digit:
                    qx, qy = table[t][digit - 1]
                    if acc is None:
                        acc = (qx, qy, 1)
                    else:
                        acc = self._jac_add_affine(*acc, qx, qy)
                k >>= 4
                t += 1
            return self._jac_to_point(acc)
        # generic double-and-add over Jacobian coordinates
        acc = None
        qx, qy = P.x, P.y
        for bit in bin(k)[2:]:
            if acc is not None:
                acc = self._jac_double(*acc)
            if bit == "1":
                if acc is None:
                    acc = (qx, qy, 1)
                else:
                    acc = self._jac_add_affine(*acc, qx, qy)
        return self._jac_to_point(acc)

    # -- scalar field ------------------------------------------------------

    def scalar(self, v: int) -> int:
        return v % self.q

    def scalar_inv(self, v: int) -> int:
        v %= self.q
        if v == 0:
            raise ZeroDivisionError("inverse of 0 mod group order")
        return pow(v, self.q - 2, self.q)

    def rand_scalar(self, rng) -> int:
        return rng.randbelow(self.q)

    # -- encodings ---------------------------------------------------------

    def encode_scalar(self, v: int) -> bytes:
        return (v % self.q).to_bytes(self.scalar_byte_len, "big")

    def decode_scalar(self, data: bytes) -> int:
        if len(data) != self.scalar_byte_len:
            raise ValueError("bad scalar length")
        v = int.from_bytes(data, "big")
        if v >= self.q:
            raise ValueError("scalar out of range")
        return v

    def encode_point(self, P: Point) -> bytes:
        if P.is_identity():
            return b"\x00" * self.point_byte_len
        prefix = 0x02 | (P.y & 1)
        return bytes([prefix]) + P.x.to_bytes(self.coord_byte_len, "big")

    def decode_point(self, data: bytes) -> Point:
        if len(data) != self.point_byte_len:
            raise MalformedPoint("bad point length")
        if data == b"\x00" * self.point_byte_len:
            return self.identity
        prefix = data[0]
        if prefix not in (0x02, 0x03):
            raise MalformedPoint("bad point prefix")
        x = int.from_bytes(data[1:], "big")
        if x >= self.p:
            raise MalformedPoint("x coordinate out of field")
        rhs = (x * x * x + self.a * x + self.b) % self.p
        y = _sqrt_mod(rhs, self.p)
        if y is None:
            raise MalformedPoint("x not on curve")
        if (y & 1) != (prefix & 1):
            y = self.p - y
        return Point(self, x, y)

    def __repr__(self):
        return f"Curve({self.name})"


def brute_force_dlog(group: Curve, P: Point, bound: int) -> int:
    """Baby-step/giant-step: find v < bound with v*G = P.

    Table holds ceil(sqrt(bound)) baby steps.  Raises DlogNotFound when no
    such v exists below the bound.
    """
    if bound <= 0:
        raise DlogNotFound("empty search range")
    if P.is_identity():
        return 0
    n = math.isqrt(bound - 1) + 1
    G = group.generator
    baby: dict[bytes, int] = {}
    step = group.identity
    for j in range(n):
        baby[group.encode_point(step)] = j
        step = step + G
    # step is now n*G
    giant_stride = group.neg(step)
    cur = P
    for i in range(n + 1):
        j = baby.get(group.encode_point(cur))
        if j is not None:
            v = i * n + j
            if v < bound:
                return v
        cur = cur + giant_stride
    raise DlogNotFound(f"no dlog below {bound}")


SECP256K1 = Curve(
    name="secp256k1",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F,
    a=0,
    b=7,
    gx=0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798,
    gy=0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8,
    order=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141,
)

# Toy curve with prime order below 2^20; parameters found by exhaustive
# point counting over F_p.
TOY = Curve(
    name="toy",
    p=1048573,
    a=1,
    b=14,
    gx=1,
    gy=4,
    order=1048193,
)

GROUPS: dict[str, Curve] = {"secp256k1": SECP256K1, "toy": TOY}


def get_group(name: str) -> Curve:
    try:
        return GROUPS[name]
    except KeyError:
        raise KeyError(f"unknown group {name!r}; known: {sorted(GROUPS)}")
