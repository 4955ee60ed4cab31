"""Pure-Python team-table kernels.

A table over ``n`` points is a bytearray of length ``2**n``; entry ``T`` is
1 when the team with member bitmask ``T`` satisfies the formula.
"""


def flat_table(mask: int, n: int) -> bytearray:
    """Table of a flat formula true exactly at the points in ``mask``."""
    out = bytearray(1 << n)
    outside = ~mask
    for team in range(1 << n):
        out[team] = 0 if team & outside else 1
    return out


def limp_table(left, right, n: int, strict: bool) -> bytearray:
    """Table of ``left -o right``.

    Lax: for every S with left[S], every U with T\\S <= U <= T must satisfy
    right.  Strict: U is exactly T\\S.
    """
    size = 1 << n
    out = bytearray(size)
    if strict:
        for team in range(size):
            ok = 1
            sub = team
            while True:
                if left[sub] and not right[team ^ sub]:
                    ok = 0
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & team
            out[team] = ok
        return out
    # above[L] = right holds on every U with L <= U <= team
    above = bytearray(size)
    for team in range(size):
        members = [1 << i for i in range(n) if team >> i & 1]
        sub = team
        while True:
            ok = right[sub]
            if ok:
                for bit in members:
                    if not sub & bit and not above[sub | bit]:
                        ok = 0
                        break
            above[sub] = ok
            if sub == 0:
                break
            sub = (sub - 1) & team
        ok = 1
        sub = team
        while True:
            if left[sub] and not above[team ^ sub]:
                ok = 0
                break
            if sub == 0:
                break
            sub = (sub - 1) & team
        out[team] = ok
    return out


def _image(team: int, succ) -> int:
    img = 0
    i = 0
    while team:
        if team & 1:
            img |= succ[i]
        team >>= 1
        i += 1
    return img


def image_table(body, succ, n: int) -> bytearray:
    """Table of a modality evaluated on the global image of the team."""
    out = bytearray(1 << n)
    for team in range(1 << n):
        out[team] = body[_image(team, succ)]
    return out


def cover_table(body, succ, n: int) -> bytearray:
    """Every subteam of the image that meets each member's successors satisfies ``body``."""
    out = bytearray(1 << n)
    for team in range(1 << n):
        rows = [succ[i] for i in range(n) if team >> i & 1]
        if any(r == 0 for r in rows):
            out[team] = 1
            continue
        img = 0
        for r in rows:
            img |= r
        ok = 1
        sub = img
        while True:
            if body[sub] == 0 and all(sub & r for r in rows):
                ok = 0
                break
            if sub == 0:
                break
            sub = (sub - 1) & img
        out[team] = ok
    return out


def choice_table(body, succ, n: int) -> bytearray:
    """Every image of a one-successor-per-member choice satisfies ``body``."""
    out = bytearray(1 << n)
    for team in range(1 << n):
        reach = {0}
        for i in range(n):
            if team >> i & 1:
                options = [1 << j for j in range(n) if succ[i] >> j & 1]
                reach = {r | o for r in reach for o in options}
        out[team] = 1 if all(body[r] for r in reach) else 0
    return out


def negate_table(body) -> bytearray:
    return bytearray(1 - v for v in body)


def implies_table(left, right) -> bytearray:
    return bytearray(1 if (not a) or b else 0 for a, b in zip(left, right))
