#!/usr/bin/env python3
"""Regenerate the bundled example-collection seed files.

Each category file is a JSON list of {id, category, instruction, code, tier}.
tier "canonical" marks the three reference pairs the generators were designed
around; tier "extended" marks original records added to cover the taxonomy
rows (basic/complex shapes and patterns; motion, transformation, repetition;
triggers and mapped control).
"""

from __future__ import annotations

import json
from pathlib import Path

SQUARE_PRIMITIVE = """\
// Defines initial setup values such as scale, position, rotation, and height of the square
function initializeParams() {
    return {
        squareScale: 0.5, // Scale factor for the square size relative to the display grid
        squarePosX: Math.floor(ShapeDisplay.grid_x / 2), // X position of the square's center
        squarePosY: Math.floor(ShapeDisplay.grid_y / 2), // Y position of the square's center
        squareRotation: 0, // Initial rotation angle of the square
        squareHeight: 25, // Height of the square pins
    };
}

// Calculates the new position of a point after rotation around the origin
function calculateRotatedPosition(x, y, rotation) {
    return {
        rotatedX: x * Math.cos(-rotation) - y * Math.sin(-rotation), // X coordinate after rotation
        rotatedY: x * Math.sin(-rotation) + y * Math.cos(-rotation), // Y coordinate after rotation
    };
}

// Determines if a point is within the defined square boundaries after rotation
function checkInBounds(rotatedX, rotatedY, maxDimension_x, maxDimension_y) {
    return (
        rotatedX >= -maxDimension_x / 2 &&
        rotatedX <= maxDimension_x / 2 &&
        rotatedY >= -maxDimension_y / 2 &&
        rotatedY <= maxDimension_y / 2
    );
}

// Main function to orchestrate the dynamic script
// Uses initialized parameters to set the display according to the square pattern
function dynamicScript(deltaTime, params) {
    const {
        squareScale,
        squarePosX,
        squarePosY,
        squareRotation,
        squareHeight,
    } = params;
    const maxDimension_x = ShapeDisplay.grid_x * squareScale; // Max width of the square
    const maxDimension_y = ShapeDisplay.grid_y * squareScale; // Max height of the square

    // Iterate over all pins to set their positions based on the square pattern
    ShapeDisplay.Pins.forEach((pin, index) => {
        let x = (index % ShapeDisplay.grid_x) - squarePosX;
        let y = Math.floor(index / ShapeDisplay.grid_x) - squarePosY;

        // Calculate rotated position for each pin
        const { rotatedX, rotatedY } = calculateRotatedPosition(
            x,
            y,
            squareRotation
        );

        // Check if the point falls within the bounds and set pin height if true
        if (checkInBounds(rotatedX, rotatedY, maxDimension_x, maxDimension_y)) {
            pin.setPos(squareHeight);
        }
    });
}
"""

BOUNCE_ANIMATION = """\
// Function to initialize and return the parameters used by the dynamic script
function initializeParams() {
    return {
        speed: 2, // Speed of the movement, defined as 2 units. Adjust this value to increase or decrease the speed. Note that the animation parameter should NOT repeat the parameter in primitive scripts, but rather control parameters for the animation
    };
}

// Define a function that encapsulates its own state using a closure
const dynamicScript = (function() {
    let direction = 1; // Initialize direction: 1 signifies moving right, -1 signifies moving left

    // Return a function that updates the position based on parameters
    return function(deltaTime, params, parentparams) {
        const { speed } = params; // Destructure speed from params for easy access

        // Conditional check to reverse direction when hitting boundaries
        if (
            parentparams.squarePosX >= ShapeDisplay.grid_x || // Right boundary check
            parentparams.squarePosX <= 0 // Left boundary check
        ) {
            direction *= -1; // Reverse direction upon hitting a boundary
        }

        // Update the square's position on the X axis based on direction, speed, and elapsed time
        parentparams.squarePosX += direction * speed * deltaTime;
    };
})();
"""

TWO_BUTTON_INTERACTION = """\
// Initializes interaction parameters with button configurations and movement speed
function initializeInteractionParameters() {
    return {
        //Always make button as a list, which contains all button instantiations and declare it as "button:[...]"
        buttons: [ // Array of button configurations
            {
                id: 1, // Unique identifier for the first button
                size: 1, // Size of the button, 1 indicates a single unit button
                position: [ // Position of the first button, calculated to be on the right side
                    Math.floor((2 * ShapeDisplay.grid_x) / 3),
                    Math.floor(ShapeDisplay.grid_y - 4),
                ],
                init_height: 50, // Initial height of the button above the baseline
            },
            {
                id: 2, // Unique identifier for the second button
                size: 1, // Size of the button, also a single unit button
                position: [ // Position of the second button, calculated to be on the left side
                    Math.floor(ShapeDisplay.grid_x / 3),
                    Math.floor(ShapeDisplay.grid_y - 4),
                ],
                init_height: 50, // Initial height of the button above the baseline
            },
        ],
        moveSpeed: 0.1, // Speed at which the square will move when a button is pressed
    };
}

// Main interaction logic, processes button presses and adjusts the square's position accordingly
function dynamicInteraction(deltaTime, params, parentParams) {
    initializeButtons(params); // Initializes the buttons at the start

    // Iterates over all pins to process button presses and move the square
    ShapeDisplay.Pins.forEach((pin) => {
        if (pin.isButton) {
            processButtonPress(pin, params, parentParams); // Processes button press for movement
        }
    });
}

// Processes button presses to move the square left or right based on the button pressed
function processButtonPress(pin, params, parentParams) {
    if (pin.isPressing) { // Checks if the button (pin) is being pressed
        if (pin.buttonGroup_id == 1) {
            parentParams.squarePosX += params.moveSpeed; // Moves the square to the right for button 1
        } else if (pin.buttonGroup_id == 2) {
            parentParams.squarePosX -= params.moveSpeed; // Moves the square to the left for button 2
        }
    }
}
"""

CIRCLE_PRIMITIVE = """\
// Builds a filled circle by raising every pin within the radius
function initializeParams() {
    return {
        circleRadius: 6, // Radius of the circle in pin units
        circlePosX: Math.floor(ShapeDisplay.grid_x / 2), // X position of the circle's center
        circlePosY: Math.floor(ShapeDisplay.grid_y / 2), // Y position of the circle's center
        circleHeight: 40, // Height of the raised pins
    };
}

function dynamicScript(deltaTime, params) {
    const { circleRadius, circlePosX, circlePosY, circleHeight } = params;
    ShapeDisplay.Pins.forEach((pin, index) => {
        const x = (index % ShapeDisplay.grid_x) - circlePosX;
        const y = Math.floor(index / ShapeDisplay.grid_x) - circlePosY;
        if (x * x + y * y <= circleRadius * circleRadius) {
            pin.setPos(circleHeight);
        }
    });
}
"""

PYRAMID_PRIMITIVE = """\
// Builds a stepped pyramid whose height falls off with ring distance
function initializeParams() {
    return {
        pyramidBase: 10, // Half-width of the pyramid footprint
        pyramidPosX: Math.floor(ShapeDisplay.grid_x / 2),
        pyramidPosY: Math.floor(ShapeDisplay.grid_y / 2),
        pyramidHeight: 80, // Peak height at the apex
    };
}

function dynamicScript(deltaTime, params) {
    const { pyramidBase, pyramidPosX, pyramidPosY, pyramidHeight } = params;
    ShapeDisplay.Pins.forEach((pin, index) => {
        const x = Math.abs((index % ShapeDisplay.grid_x) - pyramidPosX);
        const y = Math.abs(Math.floor(index / ShapeDisplay.grid_x) - pyramidPosY);
        const ring = Math.max(x, y);
        if (ring <= pyramidBase) {
            pin.setPos(pyramidHeight * (1 - ring / pyramidBase));
        }
    });
}
"""

WAVE_PRIMITIVE = """\
// A travelling sine wave; wave motion is part of the primitive itself
function initializeParams() {
    return {
        waveAmplitude: 20, // Peak deviation from the base height
        waveLength: 8, // Pins per wave period
        waveSpeed: 4, // Phase advance per second
        waveBaseHeight: 30, // Resting height of the surface
    };
}

const dynamicScript = (function() {
    let elapsed = 0;
    return function(deltaTime, params) {
        const { waveAmplitude, waveLength, waveSpeed, waveBaseHeight } = params;
        elapsed += deltaTime;
        ShapeDisplay.Pins.forEach((pin, index) => {
            const x = index % ShapeDisplay.grid_x;
            const phase = (x / waveLength) * 2 * Math.PI - elapsed * waveSpeed;
            pin.setPos(waveBaseHeight + waveAmplitude * Math.sin(phase));
        });
    };
})();
"""

LETTER_PRIMITIVE = """\
// Draws a block letter T from horizontal and vertical bars
function initializeParams() {
    return {
        letterWidth: 12, // Width of the top bar
        letterHeightSpan: 14, // Vertical extent of the stem
        letterPosX: Math.floor(ShapeDisplay.grid_x / 2),
        letterPosY: 5, // Top row of the letter
        letterHeight: 50, // Pin height of the strokes
    };
}

function dynamicScript(deltaTime, params) {
    const { letterWidth, letterHeightSpan, letterPosX, letterPosY, letterHeight } = params;
    ShapeDisplay.Pins.forEach((pin, index) => {
        const x = index % ShapeDisplay.grid_x;
        const y = Math.floor(index / ShapeDisplay.grid_x);
        const inTopBar = y >= letterPosY && y < letterPosY + 2 &&
            Math.abs(x - letterPosX) <= letterWidth / 2;
        const inStem = x >= letterPosX - 1 && x <= letterPosX + 1 &&
            y >= letterPosY && y < letterPosY + letterHeightSpan;
        if (inTopBar || inStem) {
            pin.setPos(letterHeight);
        }
    });
}
"""

PULSE_ANIMATION = """\
// Pulses the primitive by oscillating its scale around the starting value
function initializeParams() {
    return {
        pulseRate: 2, // Oscillations per second
        pulseDepth: 0.3, // Fractional swing applied to the scale
    };
}

const dynamicScript = (function() {
    let elapsed = 0;
    let baseScale = null;
    return function(deltaTime, params, parentparams) {
        const { pulseRate, pulseDepth } = params;
        if (baseScale === null) {
            baseScale = parentparams.squareScale;
        }
        elapsed += deltaTime;
        const swing = Math.sin(elapsed * pulseRate * 2 * Math.PI) * pulseDepth;
        parentparams.squareScale = baseScale * (1 + swing);
    };
})();
"""

SPIN_ANIMATION = """\
// Rotates the primitive at a constant angular speed
function initializeParams() {
    return {
        spinSpeed: 1.5, // Radians per second
    };
}

function dynamicScript(deltaTime, params, parentparams) {
    parentparams.squareRotation += params.spinSpeed * deltaTime;
}
"""

RISE_FALL_ANIMATION = """\
// Repeatedly raises and lowers the primitive's height between two bounds
function initializeParams() {
    return {
        riseSpeed: 30, // Height units per second
        minHeight: 10,
        maxHeight: 70,
    };
}

const dynamicScript = (function() {
    let direction = 1;
    return function(deltaTime, params, parentparams) {
        const { riseSpeed, minHeight, maxHeight } = params;
        if (parentparams.squareHeight >= maxHeight) {
            direction = -1;
        } else if (parentparams.squareHeight <= minHeight) {
            direction = 1;
        }
        parentparams.squareHeight += direction * riseSpeed * deltaTime;
    };
})();
"""

HOLD_BUTTON_INTERACTION = """\
// One button that raises the primitive's height while held down
function initializeInteractionParameters() {
    return {
        buttons: [
            {
                id: 1,
                size: 2, // 2x2 footprint is easier to press on hardware
                position: [
                    Math.floor(ShapeDisplay.grid_x / 2) - 1,
                    Math.floor(ShapeDisplay.grid_y - 4),
                ],
                init_height: 50,
            },
        ],
        raiseSpeed: 0.5, // Height gain per frame while pressed
    };
}

function dynamicInteraction(deltaTime, params, parentParams) {
    initializeButtons(params);
    ShapeDisplay.Pins.forEach((pin) => {
        if (pin.isButton && pin.isPressing && pin.buttonGroup_id == 1) {
            parentParams.squareHeight += params.raiseSpeed;
        }
    });
}
"""

GROW_SHRINK_INTERACTION = """\
// Two buttons mapped to growing and shrinking the primitive
function initializeInteractionParameters() {
    return {
        buttons: [
            {
                id: 1,
                size: 1,
                position: [Math.floor((2 * ShapeDisplay.grid_x) / 3), 2],
                init_height: 50,
            },
            {
                id: 2,
                size: 1,
                position: [Math.floor(ShapeDisplay.grid_x / 3), 2],
                init_height: 50,
            },
        ],
        scaleStep: 0.01, // Scale change per frame while pressed
    };
}

function dynamicInteraction(deltaTime, params, parentParams) {
    initializeButtons(params);
    ShapeDisplay.Pins.forEach((pin) => {
        if (pin.isButton && pin.isPressing) {
            if (pin.buttonGroup_id == 1) {
                parentParams.squareScale += params.scaleStep;
            } else if (pin.buttonGroup_id == 2) {
                parentParams.squareScale -= params.scaleStep;
            }
        }
    });
}
"""

TOGGLE_INTERACTION = """\
// A button that toggles the primitive's visibility on each new press
function initializeInteractionParameters() {
    return {
        buttons: [
            {
                id: 1,
                size: 1,
                position: [2, Math.floor(ShapeDisplay.grid_y - 3)],
                init_height: 50,
            },
        ],
    };
}

const dynamicInteraction = (function() {
    let wasPressed = false;
    let visible = true;
    let storedHeight = null;
    return function(deltaTime, params, parentParams) {
        initializeButtons(params);
        let pressed = false;
        ShapeDisplay.Pins.forEach((pin) => {
            if (pin.isButton && pin.isPressing && pin.buttonGroup_id == 1) {
                pressed = true;
            }
        });
        if (pressed && !wasPressed) {
            if (visible) {
                storedHeight = parentParams.squareHeight;
                parentParams.squareHeight = 0;
            } else if (storedHeight !== null) {
                parentParams.squareHeight = storedHeight;
            }
            visible = !visible;
        }
        wasPressed = pressed;
    };
})();
"""


RECORDS = {
    "primitive": [
        ("Generate a customizable square shape", SQUARE_PRIMITIVE, "canonical"),
        ("Create a circle shape in the center of the display", CIRCLE_PRIMITIVE, "extended"),
        ("Create a pyramid with a square base", PYRAMID_PRIMITIVE, "extended"),
        ("Create a sine wave pattern flowing across the display", WAVE_PRIMITIVE, "extended"),
        ("Display the letter T in the middle of the display", LETTER_PRIMITIVE, "extended"),
    ],
    "animation": [
        ("create a left and right repeat animation for the square shape", BOUNCE_ANIMATION, "canonical"),
        ("make the shape pulse by growing and shrinking periodically", PULSE_ANIMATION, "extended"),
        ("rotate the shape continuously", SPIN_ANIMATION, "extended"),
        ("move the shape up and down between two heights repeatedly", RISE_FALL_ANIMATION, "extended"),
    ],
    "interaction": [
        ("create two buttons that controls left and right movement of the button", TWO_BUTTON_INTERACTION, "canonical"),
        ("create a button that raises the shape while it is held down", HOLD_BUTTON_INTERACTION, "extended"),
        ("create two buttons to grow and shrink the shape", GROW_SHRINK_INTERACTION, "extended"),
        ("create a button that toggles the shape on and off", TOGGLE_INTERACTION, "extended"),
    ],
}


def main() -> None:
    out_dir = Path(__file__).resolve().parent.parent / "src" / "pingrid" / "data" / "seeds"
    out_dir.mkdir(parents=True, exist_ok=True)
    for category, rows in RECORDS.items():
        records = [
            {
                "id": f"{category}-{idx:03d}",
                "category": category,
                "instruction": instruction,
                "code": code,
                "tier": tier,
            }
            for idx, (instruction, code, tier) in enumerate(rows)
        ]
        path = out_dir / f"{category}.json"
        path.write_text(json.dumps(records, indent=2) + "\n")
        print(f"wrote {path} ({len(records)} records)")


if __name__ == "__main__":
    main()
