"""The one variable table shared by every catalog object."""

from ..poly import VarTable

PI_COORDS = ("p1", "p2", "p3", "p4", "u", "v", "t1", "t2",
             "L123", "L124", "L125", "L126", "L135", "L136", "L245", "L246",
             "s1", "s2", "s3")
S_VARS = ("s1", "s2", "s3")
G_CHART = PI_COORDS[:16]
L_VARS = PI_COORDS[8:16]

H_X = ("x11", "x21", "x12", "x22", "x13", "x23")
H_U = ("u1", "u2", "u3")
H_P = tuple(f"p{i}{j}{k}" for i in (1, 2) for j in (1, 2) for k in (1, 2))
H_COORDS = H_P + H_X + H_U

GL2 = ("a", "b", "c", "d", "dinv")

# free parameters of the threefold sections; bare letters get a trailing
# underscore so they do not collide with the GL2 entries
SECTION_PARAMS = (
    "a0", "a1", "a2", "a3", "a4", "b1", "b3", "b4", "c3", "c4",
    "b2", "c2",
    "a123", "b123", "c123", "a124", "b124", "c124", "a125", "b125", "c125",
    "a126", "a135", "b135", "c135", "a136",
    "a_", "b_", "c_", "d_",
    "q10", "q11", "q12", "q20", "q21", "q22",
    "T2", "l126",
    "tau", "alpha", "rho", "xi", "kappa",
)

NAMES = PI_COORDS + ("w", "A", "B") + H_COORDS + GL2 + SECTION_PARAMS

UNIVERSE = VarTable(NAMES, exp_bits=8)


def var(name: str):
    return UNIVERSE.var(name)


def vars_(names: str):
    return UNIVERSE.vars(names)


def poly(text: str):
    return UNIVERSE.parse(text)
