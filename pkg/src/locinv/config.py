from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_order: int = 64                # isomorphism search
    max_cone_candidates: int = 10**7   # normal-cone enumeration
    max_transpose_hom: int = 256       # transpose brute force
    max_wreath: int = 4096             # |G°|^|L| * |L|

    def with_(self, **kw):
        return replace(self, **kw)


DEFAULT_LIMITS = Limits()
