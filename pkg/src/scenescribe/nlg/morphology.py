"""Regular English verb inflection; irregular forms come from the lexicon."""

VOWELS = "aeiou"


def third_singular(base: str) -> str:
    if base.endswith("y") and len(base) > 1 and base[-2] not in VOWELS:
        return base[:-1] + "ies"
    if base.endswith(("s", "sh", "ch", "x", "z", "o")):
        return base + "es"
    return base + "s"


def _doubles_final_consonant(base: str) -> bool:
    # short CVC stems double before a vowel suffix (stop -> stopped)
    return (
        len(base) >= 3
        and base[-1] not in VOWELS + "wxy"
        and base[-2] in VOWELS
        and base[-3] not in VOWELS
    )


def past_tense(base: str) -> str:
    if base.endswith("e"):
        return base + "d"
    if base.endswith("y") and len(base) > 1 and base[-2] not in VOWELS:
        return base[:-1] + "ied"
    if _doubles_final_consonant(base):
        return base + base[-1] + "ed"
    return base + "ed"


def present_participle(base: str) -> str:
    if base.endswith("ie"):
        return base[:-2] + "ying"
    if base.endswith("e") and not base.endswith("ee"):
        return base[:-1] + "ing"
    if _doubles_final_consonant(base):
        return base + base[-1] + "ing"
    return base + "ing"
