"""Pure-Python table kernels, used when the compiled module is unavailable."""


def assoc_violations(left, right, limit=-1):
    left = left.tolist()
    right = right.tolist()
    n = len(left[0]) if left else 0
    count = 0
    found = []
    for a in range(n):
        row_a = right[a]
        left_a = left[a]
        for b in range(n):
            ab = left_a[b]
            left_ab = left[ab] if ab >= 0 else None
            left_b = left[b]
            for c in range(n):
                lhs = left_ab[c] if left_ab is not None else -1
                bc = left_b[c]
                rhs = row_a[bc] if bc >= 0 else -1
                if lhs != rhs:
                    count += 1
                    if limit < 0 or count <= limit:
                        found.append((a, b, c))
    return count, found


def weak_assoc_violations(left, right, limit=-1):
    left = left.tolist()
    right = right.tolist()
    n = len(left[0]) if left else 0
    count = considered = 0
    found = []
    for a in range(n):
        row_a = right[a]
        for b in range(n):
            ab = left[a][b]
            if ab < 0:
                continue
            left_ab = left[ab]
            left_b = left[b]
            for c in range(n):
                bc = left_b[c]
                if bc < 0:
                    continue
                lhs = left_ab[c]
                rhs = row_a[bc]
                if lhs < 0 or rhs < 0:
                    continue
                considered += 1
                if lhs != rhs:
                    count += 1
                    if limit < 0 or count <= limit:
                        found.append((a, b, c))
    return count, considered, found


def comm_violations(table, limit=-1):
    table = table.tolist()
    n = len(table)
    count = 0
    found = []
    for a in range(n):
        for b in range(a + 1, n):
            if table[a][b] != table[b][a]:
                count += 1
                if limit < 0 or count <= limit:
                    found.append((a, b))
    return count, found


def first_collision(table):
    seen = {}
    for i, row in enumerate(table.tolist()):
        for j, v in enumerate(row):
            if v < 0:
                continue
            if v in seen:
                return seen[v], (i, j)
            seen[v] = (i, j)
    return None
