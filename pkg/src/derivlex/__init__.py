"""derivlex: build derivational-morphology lexicons from dictionary dumps.

The pipeline pairs dictionary headwords with words from their definitions,
morphological sections, and external relation lists, keeps the pairs whose
form difference recurs across the lexicon, and annotates each kept pair with
an alternation pattern (a pair of anchored wildcard expressions) and the stem
the two lemmas share.  An analysis toolkit runs on the resulting tables:
affix rivalry, back-formation, mutual motivation, triangle census, stolons.
"""

__version__ = "0.1.0"
