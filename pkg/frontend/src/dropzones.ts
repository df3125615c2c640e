// Drop-zone geometry: the anchor's bounding box is a 3x3 grid minus the
// center; each outer zone names the relation the drop will request.

import type { Direction } from "./types.js";

export interface Box {
    left: number;
    top: number;
    width: number;
    height: number;
}

const ZONES: readonly (Direction | null)[] = [
    "aboveLeft",
    "above",
    "aboveRight",
    "onTheLeftOf",
    null,
    "onTheRightOf",
    "belowLeft",
    "below",
    "belowRight",
];

function third(offset: number, extent: number): number {
    if (extent <= 0) return 1;
    const ratio = offset / extent;
    if (ratio < 1 / 3) return 0;
    if (ratio < 2 / 3) return 1;
    return 2;
}

/** The relation a drop at (x, y) over the anchor box requests; null for the
 * center zone (no-op) and for points outside the box. */
export function relationForPoint(box: Box, x: number, y: number): Direction | null {
    if (x < box.left || y < box.top || x >= box.left + box.width || y >= box.top + box.height) {
        return null;
    }
    const column = third(x - box.left, box.width);
    const row = third(y - box.top, box.height);
    return ZONES[row * 3 + column];
}
