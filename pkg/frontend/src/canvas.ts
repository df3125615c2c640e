// Positioning canvas: the composed screen rendered from the server's solved
// placement, with drag and drop issuing place requests. Dropping a dragged
// component on one of the eight outer zones of another component's box asks
// for that relation; the center zone is a no-op.

import { relationForPoint } from "./dropzones.js";
import type { Direction, ScreenDocument } from "./types.js";

export interface CanvasHooks {
    place(subject: string, relation: Direction, anchor: string): Promise<void>;
}

export class PositioningCanvas {
    readonly element: HTMLElement;
    private screen: ScreenDocument | null = null;
    private dragSource: string | null = null;
    private hoverAnchor: HTMLElement | null = null;

    constructor(private readonly hooks: CanvasHooks) {
        this.element = document.createElement("div");
        this.element.className = "positioning-canvas";
        this.element.addEventListener("pointerdown", (event) => this.onPointerDown(event));
        this.element.addEventListener("pointermove", (event) => this.onPointerMove(event));
        this.element.addEventListener("pointerup", (event) => this.onPointerUp(event));
    }

    /** Redraw from the exported screen document (root solved to a table). */
    render(screen: ScreenDocument | null): void {
        this.screen = screen;
        this.element.textContent = "";
        this.dragSource = null;
        this.setHoverAnchor(null);
        if (!screen) {
            const empty = document.createElement("p");
            empty.className = "canvas-empty";
            empty.textContent = "Nothing composed yet.";
            this.element.appendChild(empty);
            return;
        }
        const grid = document.createElement("div");
        grid.className = "canvas-grid";
        grid.style.display = "grid";
        const spec = screen.layouts[screen.root.id];
        for (const child of screen.root.children ?? []) {
            const item = document.createElement("div");
            item.className = "canvas-item";
            item.dataset.componentId = child.id;
            item.textContent = child.label;
            if (spec?.type === "table") {
                const cell = spec.cells[child.id];
                if (cell) {
                    item.style.gridRowStart = String(cell.row + 1);
                    item.style.gridColumnStart = String(cell.col + 1);
                }
            }
            grid.appendChild(item);
        }
        this.element.appendChild(grid);
    }

    private items(): HTMLElement[] {
        return Array.from(this.element.querySelectorAll<HTMLElement>(".canvas-item"));
    }

    private itemAt(x: number, y: number, excluding: string | null): HTMLElement | null {
        for (const item of this.items()) {
            if (item.dataset.componentId === excluding) continue;
            const box = item.getBoundingClientRect();
            if (x >= box.left && x < box.right && y >= box.top && y < box.bottom) {
                return item;
            }
        }
        return null;
    }

    private setHoverAnchor(anchor: HTMLElement | null): void {
        if (this.hoverAnchor) this.hoverAnchor.classList.remove("drop-anchor");
        this.hoverAnchor = anchor;
        if (anchor) anchor.classList.add("drop-anchor");
    }

    private onPointerDown(event: PointerEvent): void {
        const target = event.target as HTMLElement | null;
        const item = target?.closest<HTMLElement>(".canvas-item");
        // A lone component has nothing to be placed against.
        if (!item || this.items().length < 2) return;
        this.dragSource = item.dataset.componentId ?? null;
        item.classList.add("dragging");
    }

    private onPointerMove(event: PointerEvent): void {
        if (!this.dragSource) return;
        this.setHoverAnchor(this.itemAt(event.clientX, event.clientY, this.dragSource));
    }

    private onPointerUp(event: PointerEvent): void {
        const source = this.dragSource;
        this.dragSource = null;
        for (const item of this.items()) item.classList.remove("dragging");
        this.setHoverAnchor(null);
        if (!source || !this.screen) return;

        const anchor = this.itemAt(event.clientX, event.clientY, source);
        if (!anchor) return;
        const relation = relationForPoint(anchor.getBoundingClientRect(), event.clientX, event.clientY);
        if (!relation) return;
        const anchorId = anchor.dataset.componentId!;
        // The hook re-renders from server state: on success with the new
        // placement, on a conflict unchanged, which reverts the drop.
        void this.hooks.place(source, relation, anchorId).catch(() => undefined);
    }
}
