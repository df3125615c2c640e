// Render application documents as interactive mock views. Containers draw
// their children per the container's layout; every component carries its id
// and reports clicks, so selection can be driven from the rendered UI.

import type {
    ApplicationDocument,
    ComponentDocument,
    LayoutSpec,
    ScreenDocument,
} from "./types.js";

export interface RenderOptions {
    selected?: Set<string>;
    onComponentClick?: (id: string) => void;
    /** Absolute layouts are scaled down to fit this width. */
    maxWidth?: number;
}

const KNOWN_KINDS = new Set([
    "container",
    "button",
    "textfield",
    "label",
    "list",
    "image",
    "custom",
]);

function componentElement(component: ComponentDocument, options: RenderOptions): HTMLElement {
    const element = document.createElement("div");
    const known = KNOWN_KINDS.has(component.kind);
    element.className = `component kind-${known ? component.kind : "unknown"}`;
    element.dataset.componentId = component.id;
    element.title = component.id;
    if (options.selected?.has(component.id)) element.classList.add("selected");

    const label = document.createElement("span");
    label.className = "component-label";
    label.textContent = known ? component.label : `${component.label} (${component.kind})`;
    element.appendChild(label);

    if (options.onComponentClick) {
        element.addEventListener("click", (event) => {
            event.stopPropagation();
            options.onComponentClick!(component.id);
        });
    }
    return element;
}

function layoutAbsolute(
    element: HTMLElement,
    children: HTMLElement[],
    component: ComponentDocument,
    spec: Extract<LayoutSpec, { type: "absolute" }>,
    options: RenderOptions,
): void {
    let extentW = 0;
    let extentH = 0;
    for (const child of component.children ?? []) {
        const frame = spec.positions[child.id];
        if (!frame) continue;
        extentW = Math.max(extentW, frame.x + frame.w);
        extentH = Math.max(extentH, frame.y + frame.h);
    }
    const maxWidth = options.maxWidth ?? 480;
    const scale = extentW > maxWidth ? maxWidth / extentW : 1;
    element.classList.add("layout-absolute");
    element.style.position = "relative";
    element.style.width = `${Math.ceil(extentW * scale)}px`;
    element.style.height = `${Math.ceil(extentH * scale)}px`;
    (component.children ?? []).forEach((child, index) => {
        const frame = spec.positions[child.id];
        if (!frame) return;
        const target = children[index];
        target.style.position = "absolute";
        target.style.left = `${Math.round(frame.x * scale)}px`;
        target.style.top = `${Math.round(frame.y * scale)}px`;
        target.style.width = `${Math.round(frame.w * scale)}px`;
        target.style.height = `${Math.round(frame.h * scale)}px`;
    });
}

function layoutTable(
    element: HTMLElement,
    children: HTMLElement[],
    component: ComponentDocument,
    spec: Extract<LayoutSpec, { type: "table" }>,
): void {
    element.classList.add("layout-table");
    element.style.display = "grid";
    (component.children ?? []).forEach((child, index) => {
        const cell = spec.cells[child.id];
        if (!cell) return;
        const target = children[index];
        target.style.gridRowStart = String(cell.row + 1);
        target.style.gridRowEnd = `span ${cell.rowSpan}`;
        target.style.gridColumnStart = String(cell.col + 1);
        target.style.gridColumnEnd = `span ${cell.colSpan}`;
    });
}

function renderComponent(
    component: ComponentDocument,
    layouts: Record<string, LayoutSpec>,
    options: RenderOptions,
): HTMLElement {
    const element = componentElement(component, options);
    if (!component.children || component.children.length === 0) return element;

    const children = component.children.map((child) => renderComponent(child, layouts, options));
    for (const child of children) element.appendChild(child);

    const spec = layouts[component.id];
    if (spec?.type === "absolute") {
        layoutAbsolute(element, children, component, spec, options);
    } else if (spec?.type === "table") {
        layoutTable(element, children, component, spec);
    } else {
        // Relative and unconstrained containers flow in document order; the
        // service owns constraint solving, so the mock view does not guess.
        element.classList.add("layout-flow");
    }
    return element;
}

export function renderScreen(screen: ScreenDocument, options: RenderOptions = {}): HTMLElement {
    const element = document.createElement("section");
    element.className = "screen";
    element.dataset.screenId = screen.id;

    const heading = document.createElement("h3");
    heading.textContent = screen.name;
    element.appendChild(heading);
    element.appendChild(renderComponent(screen.root, screen.layouts, options));
    return element;
}

export function renderApplication(
    application: ApplicationDocument,
    options: RenderOptions = {},
): HTMLElement {
    const element = document.createElement("article");
    element.className = "application";
    element.dataset.appId = application.id;

    const heading = document.createElement("h2");
    heading.textContent = application.name;
    element.appendChild(heading);
    for (const screen of application.screens) {
        element.appendChild(renderScreen(screen, options));
    }
    return element;
}
