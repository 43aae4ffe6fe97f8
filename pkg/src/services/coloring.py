"""
精确组合求解服务

DSATUR 分支定界求色数、带着色上界的最大团搜索、最长圈深度优先搜索，以及由二元码构造的半立方体着色。
所有搜索都以节点数为预算，保证结果可复现
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.config import settings
from src.errors import ImproperInput
from src.models import CliqueResult, ColoringResult, CycleResult, FiniteGraph, SolveStatus
from src.utils.codes import coset_index_map, even_weight_words, minimum_distance

logger = logging.getLogger(__name__)


class _BudgetExhausted(Exception):
    """搜索节点数用尽（内部控制流）"""


def _bitmasks(adjacency: Sequence[set]) -> List[int]:
    masks = []
    for neighbors in adjacency:
        mask = 0
        for j in neighbors:
            mask |= 1 << j
        masks.append(mask)
    return masks


def improper_edge(graph: FiniteGraph, coloring: Sequence[int]) -> Optional[Tuple[int, int]]:
    """第一条同色边；着色合法时返回 None"""
    if len(coloring) != graph.n_vertices:
        raise ImproperInput(f"Coloring has {len(coloring)} entries, graph has {graph.n_vertices} vertices")
    for i, j in graph.edges:
        if coloring[i] == coloring[j]:
            return (i, j)
    return None


def is_proper(graph: FiniteGraph, coloring: Sequence[int]) -> bool:
    return improper_edge(graph, coloring) is None


def _greedy_clique(masks: List[int], order: Sequence[int]) -> List[int]:
    clique: List[int] = []
    candidates = (1 << len(masks)) - 1
    for v in order:
        if candidates >> v & 1:
            clique.append(v)
            candidates &= masks[v]
    return clique


def _masks_clique(masks: List[int], budget: int) -> Tuple[List[int], bool, int]:
    """
    最大团分支定界（按贪心着色数剪枝）

    Returns:
        (团, 是否搜索完成, 节点数)
    """
    n = len(masks)
    if n == 0:
        return [], True, 0
    degree = [bin(m).count("1") for m in masks]
    order = sorted(range(n), key=lambda v: (-degree[v], v))
    best = _greedy_clique(masks, order)
    state = {"nodes": 0}

    def color_sort(candidates: int) -> List[Tuple[int, int]]:
        # 贪心顺序着色：返回 (顶点, 颜色数上界)，按颜色递增
        result = []
        uncolored = candidates
        color = 0
        while uncolored:
            color += 1
            available = uncolored
            while available:
                low = available & -available
                v = low.bit_length() - 1
                result.append((v, color))
                uncolored &= ~low
                available &= ~low & ~masks[v]
        return result

    def expand(clique: List[int], candidates: int):
        nonlocal best
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _BudgetExhausted
        for v, bound in reversed(color_sort(candidates)):
            if len(clique) + bound <= len(best):
                return
            extended = clique + [v]
            inner = candidates & masks[v]
            if inner:
                expand(extended, inner)
            elif len(extended) > len(best):
                best = extended
            candidates &= ~(1 << v)

    try:
        expand([], (1 << n) - 1)
        complete = True
    except _BudgetExhausted:
        complete = False
    return sorted(best), complete, state["nodes"]


def max_clique(graph: FiniteGraph, budget: Optional[int] = None) -> CliqueResult:
    """
    最大团

    Args:
        graph: 图
        budget: 搜索节点数上限（默认 settings.budget_nodes）

    Returns:
        CliqueResult: complete=False 时为搜索到的最好团（仅为下界）
    """
    limit = settings.budget_nodes if budget is None else budget
    vertices, complete, nodes = _masks_clique(_bitmasks(graph.adjacency()), limit)
    if not complete:
        logger.warning(f"Clique search on {graph.name or 'graph'} stopped after {nodes} nodes")
    return CliqueResult(vertices=vertices, complete=complete, nodes=nodes)


def independence_number(graph: FiniteGraph, budget: Optional[int] = None) -> CliqueResult:
    """最大独立集（补图上的最大团）"""
    limit = settings.budget_nodes if budget is None else budget
    n = graph.n_vertices
    full = (1 << n) - 1
    masks = [full & ~m & ~(1 << v) for v, m in enumerate(_bitmasks(graph.adjacency()))]
    vertices, complete, nodes = _masks_clique(masks, limit)
    return CliqueResult(vertices=vertices, complete=complete, nodes=nodes)


def greedy_coloring(graph: FiniteGraph) -> List[int]:
    """networkx DSATUR 贪心着色（颜色按首次出现重新编号）"""
    raw = nx.greedy_color(graph.to_networkx(), strategy="DSATUR")
    return _normalize([raw[v] for v in range(graph.n_vertices)])


def _normalize(coloring: Sequence[int]) -> List[int]:
    relabel: Dict[int, int] = {}
    return [relabel.setdefault(c, len(relabel)) for c in coloring]


def chromatic_number_exact(graph: FiniteGraph, budget: Optional[int] = None) -> ColoringResult:
    """
    精确色数

    下界取 max(ω, ⌈|V|/α⌉)（α 仅在其搜索完成时使用），上界取 DSATUR 贪心，
    然后以团顶点预着色做 DSATUR 分支定界，平局按顶点编号打破

    Args:
        graph: 图
        budget: 搜索节点数上限（默认 settings.budget_nodes；0 表示只给出上下界）

    Returns:
        ColoringResult: status 为 exact / bounded / timeout
    """
    limit = settings.budget_nodes if budget is None else budget
    n = graph.n_vertices
    if n == 0:
        return ColoringResult(lower=0, upper=0, coloring=(), status=SolveStatus.EXACT)

    adjacency = graph.adjacency()
    clique = max_clique(graph, budget=limit)
    lower = max(1, clique.size)
    if graph.n_edges:
        alpha = independence_number(graph, budget=limit)
        if alpha.complete:
            lower = max(lower, -(-n // alpha.size))

    best = greedy_coloring(graph)
    best_k = max(best) + 1
    logger.debug(f"{graph.name or 'graph'}: clique {clique.size}, lower {lower}, greedy {best_k}")
    if lower >= best_k:
        return ColoringResult(lower=best_k, upper=best_k, coloring=best, status=SolveStatus.EXACT)
    if limit <= 0:
        return ColoringResult(lower=lower, upper=best_k, coloring=best, status=SolveStatus.BOUNDED)

    colors = [-1] * n
    neighbor_colors: List[set] = [set() for _ in range(n)]
    degree = [len(a) for a in adjacency]
    state = {"nodes": 0, "best": best, "best_k": best_k}

    def assign(v: int, c: int) -> List[int]:
        colors[v] = c
        changed = []
        for u in adjacency[v]:
            if colors[u] == -1 and c not in neighbor_colors[u]:
                neighbor_colors[u].add(c)
                changed.append(u)
        return changed

    def unassign(v: int, c: int, changed: List[int]):
        colors[v] = -1
        for u in changed:
            neighbor_colors[u].discard(c)

    def choose() -> Optional[int]:
        chosen = None
        key = None
        for v in range(n):
            if colors[v] == -1:
                k = (len(neighbor_colors[v]), degree[v], -v)
                if key is None or k > key:
                    chosen, key = v, k
        return chosen

    def search(used: int):
        state["nodes"] += 1
        if state["nodes"] > limit:
            raise _BudgetExhausted
        v = choose()
        if v is None:
            if used < state["best_k"]:
                state["best_k"] = used
                state["best"] = list(colors)
                logger.debug(f"Improved coloring: {used} colors after {state['nodes']} nodes")
            return
        for c in range(min(used + 1, state["best_k"] - 1)):
            if c in neighbor_colors[v]:
                continue
            changed = assign(v, c)
            search(max(used, c + 1))
            unassign(v, c, changed)
            if state["best_k"] <= lower:
                return

    # 团顶点预先占用颜色 0..ω−1
    for c, v in enumerate(clique.vertices):
        assign(v, c)
    try:
        search(clique.size)
        status = SolveStatus.EXACT
    except _BudgetExhausted:
        status = SolveStatus.TIMEOUT
        logger.warning(f"Coloring search on {graph.name or 'graph'} exhausted {limit} nodes")

    best_k = state["best_k"]
    coloring = _normalize(state["best"])
    if status == SolveStatus.EXACT:
        lower = best_k
    logger.info(f"{graph.name or 'graph'}: chromatic number in [{lower}, {best_k}] ({status.value})")
    return ColoringResult(lower=lower, upper=best_k, coloring=coloring, status=status, nodes=state["nodes"])


def find_longest_cycle(graph: FiniteGraph, budget: Optional[int] = None) -> CycleResult:
    """
    最长圈（深度优先，以圈上最小编号顶点为起点，剩余可用顶点数不足时剪枝）

    Returns:
        CycleResult: 无圈时 length = 0
    """
    limit = settings.budget_nodes if budget is None else budget
    adjacency = graph.adjacency()
    n = graph.n_vertices
    best: List[int] = []
    state = {"nodes": 0}

    def extend(start: int, path: List[int], on_path: set):
        nonlocal best
        state["nodes"] += 1
        if state["nodes"] > limit:
            raise _BudgetExhausted
        last = path[-1]
        if len(path) >= 3 and start in adjacency[last] and len(path) > len(best):
            best = list(path)
        available = sum(1 for v in range(start + 1, n) if v not in on_path)
        if len(path) + available <= len(best):
            return
        for v in sorted(adjacency[last]):
            if v > start and v not in on_path:
                path.append(v)
                on_path.add(v)
                extend(start, path, on_path)
                path.pop()
                on_path.discard(v)

    complete = True
    try:
        for start in range(n):
            if n - start <= len(best):
                break
            extend(start, [start], {start})
    except _BudgetExhausted:
        complete = False
        logger.warning(f"Longest-cycle search stopped after {limit} nodes")
    return CycleResult(length=len(best), cycle=best, complete=complete)


def longest_cycle(graph: FiniteGraph, budget: Optional[int] = None) -> int:
    """最长圈长度，无圈时为 0"""
    return find_longest_cycle(graph, budget).length


def code_coloring(n: int, code: Sequence[Sequence[int]]) -> List[int]:
    """
    由偶重量码构造 ½Hₙ 的着色：颜色为所在码陪集的编号

    顶点顺序与 half_cube_graph(n) 的标签一致

    Raises:
        ImproperInput: 码长不符，或最小距离 < 4（同一陪集中会出现距离 2 的点）
    """
    words = [tuple(w) for w in code]
    if any(len(w) != n for w in words):
        raise ImproperInput(f"Code words must have length {n}")
    if any(sum(w) % 2 for w in words):
        raise ImproperInput("Code must consist of even-weight words")
    if len(words) > 1 and minimum_distance(words) < 4:
        raise ImproperInput("Code has minimum distance < 4; its cosets are not independent in the half-cube")
    ambient = even_weight_words(n)
    index = coset_index_map(ambient, words)
    return [index[w] for w in ambient]
