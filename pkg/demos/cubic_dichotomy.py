"""How many cubics pass through a projected Veronese surface?

The surface is the image of the plane under the ten cubic monomials,
projected from P^9 to P^5 along a 10x6 matrix N.  Whether the image lies
on one cubic or a pencil is decided by the corank of a 55x56 interpolation
matrix built from N -- no Groebner bases needed.

Run: python3 demos/cubic_dichotomy.py
"""

from lforge import fixtures
from lforge.fields import GF
from lforge.rng import Rng
from lforge.veronese import ProjectionSpec, build_LN, secant_avoidance

F = GF(17)


def random_center(rng):
    while True:
        N = [[rng.randrange(17) for _ in range(6)] for _ in range(10)]
        try:
            return ProjectionSpec(N, "p2cubics", F)
        except ValueError:
            continue


def main():
    print("corank of the interpolation matrix for ten random centers:")
    rng = Rng(4)
    for i in range(10):
        spec = random_center(rng)
        print(f"  draw {i}: corank {build_LN(spec.N, F).corank()}")
    print()
    print("(over a 17-element field roughly one draw in ten lands on the")
    print(" codimension-1 corank-2 stratum -- both values show up in a")
    print(" short run like this one)")
    print()

    spec = ProjectionSpec(fixtures.n0_matrix(F), "p2cubics", F)
    LN = build_LN(spec.N, F)
    print(f"the pinned special center: corank {LN.corank()}")
    cubics = LN.kernel_cubics(spec.target_ring)
    print(f"  -> a pencil of {len(cubics)} cubics through the surface")
    cert = secant_avoidance(spec.center_forms(), spec.secant_ideal())
    print(f"  -> projection center avoids the secant variety: "
          f"{cert['empty']}")


if __name__ == "__main__":
    main()
