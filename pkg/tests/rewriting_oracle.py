"""Independent normal-form oracle for the cancellation monoid.

Explores every order of applying ``z' z -> empty`` and returns the set of
irreducible words reached.  Works on (name, primed) pairs, not on the
integer codes the library uses.
"""


def redexes(word):
    return [
        i
        for i in range(len(word) - 1)
        if word[i][1] and not word[i + 1][1] and word[i][0] == word[i + 1][0]
    ]


def all_normal_forms(word):
    word = tuple(word)
    seen = {word}
    todo = [word]
    finals = set()
    while todo:
        w = todo.pop()
        spots = redexes(w)
        if not spots:
            finals.add(w)
        for i in spots:
            nxt = w[:i] + w[i + 2 :]
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return finals


def leftmost_innermost(word):
    w = tuple(word)
    while True:
        spots = redexes(w)
        if not spots:
            return w
        i = spots[0]
        w = w[:i] + w[i + 2 :]


def rightmost_innermost(word):
    w = tuple(word)
    while True:
        spots = redexes(w)
        if not spots:
            return w
        i = spots[-1]
        w = w[:i] + w[i + 2 :]
