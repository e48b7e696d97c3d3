import pandas as pd

# Published FER curves (min-sum rule; N_max = 3 for m in {6, 7}, 4 for RM(8,3)).
# Keyed by (m, r) and decoder name; each curve maps Eb/N0 in dB to FER.
PUBLISHED_FER = {
    (7, 3): {
        'cpa': {2.00: 0.05415358, 2.25: 0.02888838, 2.50: 0.01527370, 2.75: 0.00694000, 3.00: 0.00286000,
                3.25: 0.00111000, 3.50: 0.00045000, 3.75: 0.000160, 4.00: 0.00005300},
        'rpa': {2.00: 0.04686036, 2.25: 0.02448820, 2.50: 0.01303186, 2.75: 0.00609827, 3.00: 0.00255429,
                3.25: 0.00104325, 3.50: 0.00037500, 3.75: 0.00012800, 4.00: 0.00004300},
        'iupa': {2.00: 0.05828865, 2.25: 0.03017502, 2.50: 0.01629036, 2.75: 0.00736000, 3.00: 0.00295000,
                 3.25: 0.00116000, 3.50: 0.00046000, 3.75: 0.00015900, 4.00: 0.00005100},
        'rupa': {2.00: 0.04885198, 2.25: 0.02500875, 2.50: 0.01350202, 2.75: 0.00636000, 3.00: 0.00244000,
                 3.25: 0.00102000, 3.50: 0.00035000, 3.75: 0.00012000, 4.00: 0.00004200},
    },
    (8, 3): {
        'cpa': {1.00: 0.15822034, 1.25: 0.08953000, 1.50: 0.04518000, 1.75: 0.02002000, 2.00: 0.00806000,
                2.25: 0.00283000, 2.50: 0.00087000, 2.75: 0.00024000},
        'rpa': {1.00: 0.11628177, 1.25: 0.06267000, 1.50: 0.03058000, 1.75: 0.01324000, 2.00: 0.00502000,
                2.25: 0.00180000, 2.50: 0.00058000, 2.75: 0.00013000},
        'iupa': {1.00: 0.20250294, 1.25: 0.11860286, 1.50: 0.06317000, 1.75: 0.02892000, 2.00: 0.01189000,
                 2.25: 0.00449000, 2.50: 0.00130000, 2.75: 0.00036000},
        'rupa': {1.00: 0.12054002, 1.25: 0.06460000, 1.50: 0.03197000, 1.75: 0.01374000, 2.00: 0.00523000,
                 2.25: 0.00191000, 2.50: 0.00065000, 2.75: 0.00013000},
    },
    (6, 4): {
        'cpa': {4.00: 0.09932459, 4.25: 0.06366183, 4.50: 0.03848818, 4.75: 0.02390514, 5.00: 0.01415168,
                5.25: 0.00726639, 5.50: 0.00399017, 5.75: 0.00187422, 6.00: 0.00090700},
        'rpa': {4.00: 0.08419635, 4.25: 0.05243838, 4.50: 0.03086229, 4.75: 0.01890431, 5.00: 0.01153256,
                5.25: 0.00589018, 5.50: 0.00315145, 5.75: 0.00143552, 6.00: 0.00067000},
        'iupa': {4.00: 0.09363296, 4.25: 0.05880278, 4.50: 0.03478140, 4.75: 0.02127433, 5.00: 0.01278217,
                 5.25: 0.00663420, 5.50: 0.00352879, 5.75: 0.00166263, 6.00: 0.00076400},
        'rupa': {4.00: 0.08697921, 4.25: 0.05448404, 4.50: 0.03227681, 4.75: 0.02036826, 5.00: 0.01212209,
                 5.25: 0.00631540, 5.50: 0.00332259, 5.75: 0.00151122, 6.00: 0.00072500},
    },
    (7, 4): {
        'cpa': {3.50: 0.04206099, 3.75: 0.01967536, 4.00: 0.01003291, 4.25: 0.00419000, 4.50: 0.00171000,
                4.75: 0.00082000, 5.00: 0.00024000},
        'rpa': {3.50: 0.03586157, 3.75: 0.01656617, 4.00: 0.00861000, 4.25: 0.00351000, 4.50: 0.00140000,
                4.75: 0.00064000, 5.00: 0.00016000},
        'iupa': {3.50: 0.04863577, 3.75: 0.02244619, 4.00: 0.01107432, 4.25: 0.00450000, 4.50: 0.00176000,
                 4.75: 0.00082000, 5.00: 0.00021000},
        'rupa': {3.50: 0.03700688, 3.75: 0.01747213, 4.00: 0.00891000, 4.25: 0.00357000, 4.50: 0.00149000,
                 4.75: 0.00070000, 5.00: 0.00017000},
    },
}


def reference_fer(code: tuple, decoder: str, ebno_db: float):
    """
    Published FER at one operating point.

    Args:
        code (tuple): (m, r).
        decoder (str): 'rpa', 'cpa', 'rupa' or 'iupa'.
        ebno_db (float): Eb/N0 in dB.

    Returns:
        float or None: The published value, or None when the point was not published.
    """
    curve = PUBLISHED_FER.get(tuple(code), {}).get(str(decoder).lower(), {})
    for point, fer in curve.items():
        if abs(point - ebno_db) < 1e-9:
            return fer
    return None


def reference_table() -> pd.DataFrame:
    """All published points as a long table with columns code, decoder, ebno_db, fer."""
    rows = [
        {'code': f"RM({m},{r})", 'decoder': decoder, 'ebno_db': ebno_db, 'fer': fer}
        for (m, r), curves in PUBLISHED_FER.items()
        for decoder, curve in curves.items()
        for ebno_db, fer in curve.items()
    ]
    return pd.DataFrame(rows, columns=['code', 'decoder', 'ebno_db', 'fer'])
