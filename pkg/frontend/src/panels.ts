// The selection panel (direction toggles, scope, extension buttons) and the
// help panel (guided suggestions with accept buttons).

import type { StudioSession } from "./session.js";
import { DIRECTIONS, type Direction, type Scope, type SuggestionMode } from "./types.js";

const SCOPES: readonly Scope[] = ["first", "last", "all"];
const MODES: readonly SuggestionMode[] = ["tasks", "functionalities", "layout", "complete"];

function button(label: string, onClick: () => void): HTMLButtonElement {
    const element = document.createElement("button");
    element.type = "button";
    element.textContent = label;
    element.addEventListener("click", onClick);
    return element;
}

function runAction(action: () => Promise<unknown>): void {
    // Errors surface through session.state.notice; the panel just repaints.
    void action().catch(() => undefined);
}

export class SelectionPanel {
    readonly element: HTMLElement;
    private readonly toggles = new Map<Direction, HTMLInputElement>();
    private readonly scopes = new Map<Scope, HTMLInputElement>();
    private readonly buttons: HTMLButtonElement[] = [];
    private readonly notice: HTMLElement;
    private readonly selectionList: HTMLElement;

    constructor(private readonly session: StudioSession) {
        this.element = document.createElement("section");
        this.element.className = "panel selection-panel";

        const heading = document.createElement("h2");
        heading.textContent = "Selection";
        this.element.appendChild(heading);

        this.selectionList = document.createElement("ul");
        this.selectionList.className = "selection-items";
        this.element.appendChild(this.selectionList);

        const directions = document.createElement("fieldset");
        directions.className = "direction-toggles";
        const legend = document.createElement("legend");
        legend.textContent = "Directions";
        directions.appendChild(legend);
        for (const direction of DIRECTIONS) {
            const label = document.createElement("label");
            const input = document.createElement("input");
            input.type = "checkbox";
            input.value = direction;
            input.addEventListener("change", () => session.toggleDirection(direction));
            label.appendChild(input);
            label.appendChild(document.createTextNode(direction));
            directions.appendChild(label);
            this.toggles.set(direction, input);
        }
        this.element.appendChild(directions);

        const scopes = document.createElement("fieldset");
        scopes.className = "scope-choice";
        const scopeLegend = document.createElement("legend");
        scopeLegend.textContent = "Seed";
        scopes.appendChild(scopeLegend);
        for (const scope of SCOPES) {
            const label = document.createElement("label");
            const input = document.createElement("input");
            input.type = "radio";
            input.name = "scope";
            input.value = scope;
            input.addEventListener("change", () => session.setScope(scope));
            label.appendChild(input);
            label.appendChild(document.createTextNode(scope));
            scopes.appendChild(label);
            this.scopes.set(scope, input);
        }
        this.element.appendChild(scopes);

        const actions = document.createElement("div");
        actions.className = "extend-actions";
        this.buttons.push(
            button("Extend layout", () => runAction(() => session.extendLayout())),
            button("Extend parent", () => runAction(() => session.extendParent())),
            button("Extend task", () => runAction(() => session.extendTask())),
            button("Extend functionality", () =>
                runAction(() => session.extendFunctionality()),
            ),
        );
        for (const element of this.buttons) actions.appendChild(element);
        this.element.appendChild(actions);

        this.notice = document.createElement("p");
        this.notice.className = "notice";
        this.element.appendChild(this.notice);

        session.onChange(() => this.update());
        this.update();
    }

    private update(): void {
        const state = this.session.state;
        this.selectionList.textContent = "";
        for (const id of state.selection) {
            const item = document.createElement("li");
            item.textContent = id;
            item.dataset.componentId = id;
            this.selectionList.appendChild(item);
        }
        for (const [direction, input] of this.toggles) {
            input.checked = state.directions.has(direction);
            input.disabled = state.busy;
        }
        for (const [scope, input] of this.scopes) {
            input.checked = state.scope === scope;
            input.disabled = state.busy;
        }
        for (const element of this.buttons) element.disabled = state.busy;
        this.notice.textContent = state.notice;
    }
}

export class HelpPanel {
    readonly element: HTMLElement;
    private readonly modeSelect: HTMLSelectElement;
    private readonly list: HTMLElement;

    constructor(private readonly session: StudioSession) {
        this.element = document.createElement("section");
        this.element.className = "panel help-panel";

        const heading = document.createElement("h2");
        heading.textContent = "Help";
        this.element.appendChild(heading);

        this.modeSelect = document.createElement("select");
        for (const mode of MODES) {
            const option = document.createElement("option");
            option.value = mode;
            option.textContent = mode;
            this.modeSelect.appendChild(option);
        }
        this.modeSelect.addEventListener("change", () => {
            session.setHelpMode(this.modeSelect.value as SuggestionMode);
            runAction(() => session.loadSuggestions());
        });
        this.element.appendChild(this.modeSelect);

        this.list = document.createElement("div");
        this.list.className = "suggestions";
        this.element.appendChild(this.list);

        session.onChange(() => this.update());
        this.update();
    }

    private update(): void {
        const state = this.session.state;
        this.modeSelect.value = state.helpMode;
        this.list.textContent = "";
        if (state.selection.length === 0) {
            this.list.textContent = "Select something to get suggestions.";
            return;
        }
        if (state.suggestions.length === 0) {
            this.list.textContent = "No suggestions.";
            return;
        }
        for (const suggestion of state.suggestions) {
            const card = document.createElement("div");
            card.className = "suggestion";
            const question = document.createElement("p");
            question.textContent = `${suggestion.question} (${suggestion.candidates.length})`;
            card.appendChild(question);
            card.appendChild(
                button("Accept", () =>
                    runAction(async () => {
                        await this.session.acceptSuggestion(suggestion);
                        await this.session.loadSuggestions();
                    }),
                ),
            );
            this.list.appendChild(card);
        }
    }
}
