import networkx as nx

from .subspaces import induced_subspace, q_binomial


def _check_code_dims(m: int, r: int):
    if r < 2 or r > m:
        raise ValueError(f"Projection schedules need 2 <= r <= m, got m={m}, r={r}")


def first_projection(b: int) -> int:
    """First scheduled projection index for branch number b: 2^floor(log2 b)."""
    if b < 1:
        raise ValueError(f"Branch number must be at least 1, got {b}")
    return 1 << (b.bit_length() - 1)


def last_projection(m: int, r: int) -> int:
    """Last scheduled projection index 2^{m-r+2} - 1 (the same at every recursion level)."""
    return (1 << (m - r + 2)) - 1


def projection_indices(m: int, r: int, b: int = 1, unique: bool = True) -> range:
    """
    Projection indices used by one call on an RM(m, r) vector.

    Args:
        m (int): Current ambient dimension.
        r (int): Current code order (r >= 2).
        b (int, optional): Branch number of the vector. Defaults to 1.
        unique (bool, optional): Use the unique-projection schedule; otherwise all
            one-dimensional subspaces are used. Defaults to True.

    Returns:
        range: The indices i of the subspaces {0, i} to project onto.

    Raises:
        ValueError: If the schedule would be empty.
    """
    if not unique:
        return range(1, 1 << m)
    fp = first_projection(b)
    lp = last_projection(m, r)
    if fp > lp:
        raise ValueError(f"Empty schedule for RM({m},{r}) at branch {b}: fp={fp} > lp={lp}")
    return range(fp, lp + 1)


def schedule_paths(m: int, r: int, unique: bool = True):
    """
    Enumerate the leaf paths of the projection tree of an RM(m, r) decoder.

    Each path lists (chosen index, ambient dimension) for the r-1 projection
    levels, outermost level first. With `unique=False` this is the full
    recursive tree; with `unique=True` every level follows the first/last
    projection rule, the child of a vector projected onto {0, i} carrying
    branch number i.

    Args:
        m (int): Code length exponent.
        r (int): Code order, 2 <= r <= m.
        unique (bool, optional): Follow the unique-projection schedule. Defaults to True.

    Yields:
        list of tuple: One leaf path.
    """
    _check_code_dims(m, r)

    def walk(dim, order, branch, prefix):
        if order == 1:
            yield list(prefix)
            return
        for i in projection_indices(dim, order, branch, unique):
            prefix.append((i, dim))
            yield from walk(dim - 1, order - 1, i, prefix)
            prefix.pop()

    yield from walk(m, r, 1, [])


def verify_unique_schedule(m: int, r: int) -> dict:
    """
    Certify by brute force that the unique-projection schedule has no duplicates.

    Every leaf path of the schedule is mapped to the subspace of the original
    space it induces; the schedule is complete when every leaf is distinct and
    every (r-1)-dimensional subspace is reached.

    Args:
        m (int): Code length exponent.
        r (int): Code order, 2 <= r <= m.

    Returns:
        dict: `leaf_count`, `distinct_count`, `expected_count` and `complete`.
    """
    _check_code_dims(m, r)
    leaves = 0
    distinct = set()
    for path in schedule_paths(m, r, unique=True):
        leaves += 1
        distinct.add(induced_subspace(path))
    expected = q_binomial(m, r - 1)
    return {
        'leaf_count': leaves,
        'distinct_count': len(distinct),
        'expected_count': expected,
        'complete': leaves == len(distinct) == expected,
    }


def level_projection_counts(m: int, r: int, unique: bool = True) -> list:
    """
    Number of projections performed at each recursion level d = 0 .. r-2.

    Args:
        m (int): Code length exponent.
        r (int): Code order, 2 <= r <= m.
        unique (bool, optional): Count the unique-projection schedule instead of
            the full tree. Defaults to True.

    Returns:
        list of int: Projection count per level.
    """
    _check_code_dims(m, r)
    if unique:
        return [q_binomial(m - r + 2 + d, d + 1) for d in range(r - 1)]
    counts = []
    total = 1
    for d in range(r - 1):
        total *= (1 << (m - d)) - 1
        counts.append(total)
    return counts


def duplicate_count(m: int, r: int) -> dict:
    """
    Total, unique and duplicate first-order projections of the recursive tree.

    Args:
        m (int): Code length exponent.
        r (int): Code order, 2 <= r <= m.

    Returns:
        dict: `N_T` (leaves of the full tree), `N_U` (distinct (r-1)-dimensional
        subspaces) and `N_D = N_T - N_U`.
    """
    _check_code_dims(m, r)
    total = level_projection_counts(m, r, unique=False)[-1]
    unique = q_binomial(m, r - 1)
    return {'N_T': total, 'N_U': unique, 'N_D': total - unique}


def schedule_tree(m: int, r: int, unique: bool = True) -> nx.DiGraph:
    """
    Build the projection tree as a directed graph.

    Nodes are tuples of chosen indices (the root is the empty tuple); each node
    stores its recursion `level` (-1 for the root) and the ambient dimension
    `dim` of the vector it represents.

    Args:
        m (int): Code length exponent.
        r (int): Code order, 2 <= r <= m.
        unique (bool, optional): Follow the unique-projection schedule. Defaults to True.

    Returns:
        networkx.DiGraph: The tree, rooted at ().
    """
    _check_code_dims(m, r)
    tree = nx.DiGraph()
    tree.add_node((), level=-1, dim=m)
    for path in schedule_paths(m, r, unique):
        node = ()
        for level, (i, dim) in enumerate(path):
            child = node + (i,)
            if child not in tree:
                tree.add_node(child, level=level, dim=dim - 1)
                tree.add_edge(node, child)
            node = child
    return tree


def level_counts(tree: nx.DiGraph) -> list:
    """Number of tree nodes per recursion level, read off breadth-first layers."""
    layers = list(nx.bfs_layers(tree, [()]))
    return [len(layer) for layer in layers[1:]]
