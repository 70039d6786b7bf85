"""Reference values for the three transmission cases and the
length spectra (E = 1 transmission sweep, t ~ 1 energy sweep)."""

CASE_PARAMS = {
    "case1": dict(E=1.0, F=0.01, alpha=0.015, beta=0.025, R0=0.2822, R1=0.1, k=1.0),
    "case2": dict(E=2.0, F=0.011, alpha=0.1, beta=0.1, R0=0.2822, R1=0.2821, k=1.0),
    "case3": dict(E=1.0, F=0.01, alpha=0.02, beta=0.415, R0=0.2822, R1=0.001, k=1.0),
}

CASE_MATCH = {
    "case1": dict(A1=0.2674, B1=0.2985, a=1.2766),
    "case2": dict(A1=0.78**0.5, B1=0.13**0.5, a=1.3539),
    "case3": dict(A1=0.0027, B1=0.2985, a=1.2766),
}

CASE_LENGTHS = {
    "case1": [6, 45, 46],
    "case2": [6, 17, 38, 41, 51],
    "case3": [11, 15, 45, 59],
}

CASE_PHASES = {
    "case1": [-6.5656, -44.5328, -46.5050],
    "case2": [-5.9973, -20.1340, -41.1402, -41.0037, -50.9981],
    "case3": [-9.8816, -12.1483, -45.0147, -61.0805],
}

CASE_T2 = {"case1": 0.0696, "case2": 1e-4, "case3": 0.0796}
CASE_CURRENT = {"case1": -0.098, "case2": 0.0, "case3": -0.113}
TRANSMISSION = {"case1": 0.8744, "case2": 0.00071}

RECOIL_ENERGY_EV = 0.2848  # lambda = 2 nm, m = 0.067 m_e

SPECTRUM_PARAMS = dict(F=0.01, alpha=0.02, beta=0.415, R0=0.2822, k=1.0, L_max=60)

T_LENGTH = [
    (0.0, [8, 28, 35, 46]),
    (0.1, [48]),
    (0.2, [16, 21]),
    (0.3, [37, 44]),
    (0.4, []),
    (0.5, [13]),
    (0.6, [5, 11]),
    (0.7, [26, 30, 33, 54]),
    (0.8, [3, 39, 42, 56]),
    (0.9, [3]),
    (1.0, [11, 15, 45, 59]),
]
T_MULTI = [(3, [0.8, 0.9]), (11, [0.6, 1.0])]

E_LENGTH = [
    (0.5, [10, 44]),
    (0.6, [9, 13, 19, 27, 42, 54, 59]),
    (0.7, [8, 13, 31, 39, 44]),
    (0.8, [10, 19, 26, 53, 59]),
    (0.9, [5, 9, 24, 29, 52, 60]),
    (1.0, [11, 15, 45, 59]),
    (1.1, [14, 21, 29, 30, 42]),
    (1.2, [12, 21, 22, 36, 38, 40, 46, 48, 58]),
    (1.3, [20, 23, 25, 33, 35, 37, 46, 48, 52]),
    (1.4, [15, 31, 33, 41, 48, 50, 57, 59]),
    (1.5, [21, 26, 28, 36, 50, 55, 57]),
]
E_MULTI = [
    (9, [0.6, 0.9]), (10, [0.5, 0.8]), (13, [0.6, 0.7]), (15, [1.0, 1.4]),
    (19, [0.6, 0.8]), (21, [1.1, 1.2, 1.5]), (26, [0.8, 1.5]), (29, [0.9, 1.1]),
    (31, [0.7, 1.4]), (33, [1.3, 1.4]), (36, [1.2, 1.5]), (42, [0.6, 1.1]),
    (44, [0.5, 0.7]), (46, [1.2, 1.3]), (48, [1.2, 1.3, 1.4]), (50, [1.4, 1.5]),
    (52, [0.9, 1.3]), (57, [1.4, 1.5]), (59, [0.6, 0.8, 1.0, 1.4]),
]
